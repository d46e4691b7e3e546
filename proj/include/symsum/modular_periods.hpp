/* Copyright (C) 2026 the symsum authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symsum/finite_fields.hpp"
#include "symsum/recurrences.hpp"

namespace symsum {

struct FactoredValue {
    mpz_class value;
    std::vector<std::pair<mpz_class, unsigned>> factors;
};

struct PeriodOptions {
    uint64_t rho_budget = kDefaultRhoBudget;
    uint64_t scan_cap = 50'000'000;  // term cap for literal scans
};

enum class PeriodMethod { Auto, Scan, Matrix, Vince };

PeriodMethod period_method_from_string(const std::string& name);
std::string period_method_name(PeriodMethod m);

/** pi*(p) by Vince's theorem: factor chi over F_p, take the lcm of the root
 *  orders in their extension fields, scaled by p^{ceil(log_p e)} for any
 *  factor multiplicity e > 1.  Requires p to not divide the constant term.
 *  Returns nullopt ("order unavailable") when some p^d - 1 resists the
 *  factorization budget. */
std::optional<FactoredValue> weak_period_vince(const IntPolynomial& chi, const PrimeModulus& p,
                                               const PeriodOptions& opts = {});

/** pi*(p) as the multiplicative order of the companion matrix: divisors of
 *  the p^{ord_{2^r}(p)} - 1 bound (r recovered from the recurrence degree)
 *  tested in increasing order with fast matrix exponentiation.  Falls back to
 *  the generic multiple p^s * lcm(p^{d_i} - 1) when the recurrence is outside
 *  the square-free factor lattice.  nullopt when the bound cannot be
 *  factored within budget. */
std::optional<FactoredValue> weak_period_matrix(const Recurrence& rec, const PrimeModulus& p,
                                                const PeriodOptions& opts = {});

/** Literal scan for the first state-vector repeat; nullopt when no repeat
 *  shows up within cap terms. */
std::optional<uint64_t> pisano_scan(const Recurrence& rec, const PrimeModulus& p, uint64_t cap);

/** Least e >= 1 with X_{start+e} = X_start mod p, found by testing the
 *  divisors of a factored multiple of e (normally pi*). */
FactoredValue least_state_period(const Recurrence& rec, const PrimeModulus& p,
                                 const FactoredValue& multiple);

/** The Pisano period pi(p).  Auto tries Vince, then the matrix method, then
 *  a capped literal scan; a chosen method that cannot complete throws. */
mpz_class pisano_period(const Recurrence& rec, const PrimeModulus& p,
                        PeriodMethod method = PeriodMethod::Auto, const PeriodOptions& opts = {});

struct RestrictedPeriod {
    bool degenerate = false;  // initial state vector vanished mod p
    mpz_class alpha;
    uint64_t multiplier = 1;
    mpz_class beta = 1;
};

/** Restricted period alpha (least e with X_{start+e} = s X_start), the
 *  multiplier s and beta = ord_p(s).  Guarantees pi = alpha * beta.  A zero
 *  initial vector yields a flagged degenerate result. */
RestrictedPeriod restricted_period(const Recurrence& rec, const PrimeModulus& p,
                                   const PeriodOptions& opts = {});

struct WeakRestrictedPeriod {
    mpz_class alpha_star;
    uint64_t multiplier_star = 1;
    mpz_class beta_star = 1;
};

/** alpha* (least e with A^e = s I), s* and beta*.  Computed on demand only:
 *  it costs matrix powers over the divisors of pi*. */
std::optional<WeakRestrictedPeriod> weak_restricted_period(const Recurrence& rec,
                                                           const PrimeModulus& p,
                                                           const PeriodOptions& opts = {});

/** Local period lambda(p; i): least e with x_i = x_{i+ke} mod p for all k,
 *  found by testing divisors of pi.  With `augmented`, rec must be the
 *  minimal recurrence of an elementary power-of-two degree; the sequence is
 *  then re-based to start = 0 with values (0, 1, 2, 4, ..., 2^{D-2}), the
 *  left extension used to expose the forced zeros at positions 2^{l+1} D. */
mpz_class local_period(const Recurrence& rec, const PrimeModulus& p, long i, bool augmented,
                       const PeriodOptions& opts = {});

/** p^{ord_{2^r}(p)} - 1; equals p - 1 when p = 1 mod 2^r and p^2 - 1 when
 *  ord_{2^r}(p) = 2 (the two corollary refinements). */
mpz_class period_bound(const DegreeSet& d, const PrimeModulus& p);
mpz_class period_bound_for_order(int r, const PrimeModulus& p);
std::string period_bound_rule(const DegreeSet& d, const PrimeModulus& p);

struct PeriodReport {
    uint64_t p = 0;
    mpz_class pi, pi_star, alpha, beta = 1, bound;
    uint64_t multiplier = 1;
    bool degenerate = false;
    std::optional<mpz_class> alpha_star, beta_star;
    std::map<std::string, std::string> methods;  // field -> provenance
};

struct PeriodReportOptions {
    PeriodMethod method = PeriodMethod::Auto;
    bool with_weak_restricted = false;
    PeriodOptions period = {};
};

/** Assembles pi, pi*, alpha, s, beta and the bound for one (recurrence, p)
 *  pair, recording per-field provenance.  d supplies r for the bound; when
 *  absent r is recovered from the recurrence degree. */
PeriodReport period_report(const Recurrence& rec, const PrimeModulus& p,
                           const DegreeSet* d = nullptr, const PeriodReportOptions& opts = {});

struct RelationCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct RelationVerdict {
    bool all_pass = true;
    std::vector<RelationCheck> checks;
};

/** Structural checks across reports computed for one p: pi = alpha*beta,
 *  pi | pi*, pi* | bound, 2^r | pi* (for ks >= 2), equal pi* within one
 *  r-class, and the divisibility chain of elementary pi* across degrees. */
RelationVerdict check_relations(const std::vector<std::pair<DegreeSet, PeriodReport>>& reports);

}  // namespace symsum
