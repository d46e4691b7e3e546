/* Copyright (C) 2026 the symsum authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symsum/modular_periods.hpp"

namespace symsum {

struct AvoidanceResult {
    uint64_t p = 0;
    bool avoids = false;
    std::optional<long long> first_zero_index;  // sequence index n >= start
    mpz_class period_scanned;
};

struct AvoidOptions {
    /// When set, scan this many terms instead of computing the Pisano period
    /// first (the caller asserts it is a multiple of the period, e.g. p-1 for
    /// primes p = 1 mod 2^r).
    std::optional<mpz_class> scan_length;
    PeriodOptions period = {};
};

/** Does p divide any term of {S(sigma_{n,d})}?  Scans one full Pisano period
 *  (value periodicity is exact: det of the companion matrix is a power of 2,
 *  so the sequence mod p is purely periodic). */
AvoidanceResult avoids(const DegreeSet& d, const PrimeModulus& p, const AvoidOptions& opts = {});

/** Same for the perturbed sequence {S(sigma_{n,d} + F)}_{n > F.j}, which
 *  satisfies the full recurrence of its r-class. */
AvoidanceResult avoids(const DegreeSet& d, const Perturbation& f, const PrimeModulus& p,
                       const AvoidOptions& opts = {});

/** Scan any recurrence-backed sequence for zeros mod p. */
AvoidanceResult avoids_recurrence(const Recurrence& rec, const PrimeModulus& p,
                                  const AvoidOptions& opts = {});

/** z(p): the number of zeros among S(sigma_{n,d}) mod p, 1 <= n <= pi(p). */
long long zeros_in_period(const DegreeSet& d, const PrimeModulus& p,
                          const PeriodOptions& opts = {});

struct FindPrimeResult {
    bool found = false;
    uint64_t prime = 0;
    uint64_t max_m_tested = 0;
};

/** Smallest prime p = 2^r m + 1 (2^{r-1} < k < 2^r) avoided by
 *  {S(sigma_{n,k})}, searched over m = 1..max_m with the minimal recurrence
 *  and scan length p - 1.  k must not be a power of two (those are balanced
 *  at the trivial positions, so no avoiding prime exists). */
FindPrimeResult find_avoiding_prime(int k, uint64_t max_m = 1'000'000, int jobs = 1);

/** All non-empty degree subsets of {1..max_degree} whose sequences avoid p,
 *  in lexicographic order.  One shared scan length per r-class: every
 *  candidate's period divides the weak period of the top elementary degree. */
std::vector<DegreeSet> scan_avoiders(int max_degree, const PrimeModulus& p, int jobs = 1);

struct ProgressionReport {
    int r = 0;
    std::vector<int> all_residues;  // j in [0, 2^r) with odd parity exponent
    std::vector<int> odd_residues;  // the odd ones: progressions j + m 2^r
    mpq_class density;              // |odd_residues| / 2^{r-1}
    std::optional<std::string> empty_reason;
};

/** The primes dividing S(sigma_{p,d}) at their own index p are exactly the
 *  primes in the progressions j + m 2^r over the odd residues j with odd
 *  parity exponent.  No odd residues happens exactly when d is a union of
 *  adjacent pairs {2l, 2l+1}, which is verified and reported. */
ProgressionReport prime_divisor_progressions(const DegreeSet& d);

struct Deg2Report {
    int j = 0;
    mpz_class d_j1, d_j2;  // S(sigma_{j+1,2}+F), S(sigma_{j+2,2}+F)
    bool all_zero = false;
    bool balanced_possible = false;
    long zero_start = 0;  // zeros at zero_start + 4m on the balanced branch
    std::vector<mpz_class> four_numbers;  // 2d1-d2, d1, d2, d1-d2
    std::vector<std::pair<mpz_class, long>> prime_classes;  // odd prime -> first index it divides
    std::vector<mpz_class> prime_set;  // sorted, includes 2
};

/** Degree-2 perturbation analysis: either the ratio test lands in
 *  {0, +1, -1, inf} and zeros recur with period 4 from zero_start, or the
 *  perturbation is never balanced and the complete finite set of dividing
 *  primes comes from the four numbers 2d1-d2, d1, d2, d1-d2 (d(n+4) = -4 d(n)
 *  exactly, so odd divisors are class-periodic with period 4). */
Deg2Report analyze_deg2_perturbation(const Perturbation& f);

/** Membership of p in Av(3) = Av(3,2): ord_p(4) = 2 mod 4. */
bool deg3_avoidance_criterion(const PrimeModulus& p);

}  // namespace symsum
