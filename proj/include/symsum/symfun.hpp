/* Copyright (C) 2026 the symsum authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace symsum {

/** A symmetric Boolean function sigma_{n,[k1,...,ks]} is named by its strictly
 *  increasing list of elementary-symmetric degrees k1 < k2 < ... < ks. */
class DegreeSet {
  public:
    /// Degrees must be strictly increasing and >= 1.
    explicit DegreeSet(std::vector<int> degrees);

    /// Reduces a degree multiset mod 2 (repeated degrees cancel in pairs).
    /// Throws if everything cancels.
    static DegreeSet from_multiset(std::vector<int> degrees);

    const std::vector<int>& degrees() const { return degrees_; }
    int max_degree() const { return degrees_.back(); }
    bool contains(int k) const;
    size_t size() const { return degrees_.size(); }

    /// r = floor(log2 ks) + 1, so 2^{r-1} <= ks < 2^r.
    int r() const { return r_; }

    bool operator==(const DegreeSet& o) const { return degrees_ == o.degrees_; }
    bool operator<(const DegreeSet& o) const { return degrees_ < o.degrees_; }

    std::string to_string() const;  // "[2,3,5]"

  private:
    std::vector<int> degrees_;
    int r_;
};

/** Parity of C(j,k1)+...+C(j,ks): by Lucas, C(j,k) is odd iff (j & k) == k.
 *  This is the sign exponent of the j-th binomial term of the exponential sum. */
int parity_exponent(unsigned long long j, const DegreeSet& d);

struct ExactSum {
    int n;
    mpz_class value;
};

/** S(sigma_{n,[k1..ks]}) = sum_{j=0}^{n} (-1)^{parity_exponent(j)} C(n,j),
 *  exact.  Defined for every n >= 1 (degrees above n act as the zero
 *  function, since C(j,k) = 0 for j < k). */
ExactSum exp_sum_exact(int n, const DegreeSet& d);

/** A Boolean polynomial F on the first j variables, given by its ANF
 *  (list of monomials, each a bitmask over variables 1..j; the empty mask is
 *  the constant 1).  The truth table and the weight-class sums
 *  C_m(F) = sum_{w(x)=m} (-1)^{F(x)} are derived eagerly. */
class Perturbation {
  public:
    Perturbation(int j, std::vector<uint32_t> monomial_masks);

    /// Text ANF: semicolon-separated monomials, each a comma-separated list of
    /// variable indices; the token "0" is the constant 1.  "1,2,3;4,5,6"
    /// is X1X2X3 + X4X5X6.
    static Perturbation parse_anf(const std::string& text, int j);

    int var_count() const { return j_; }
    const std::vector<uint32_t>& monomials() const { return monomials_; }
    const std::vector<uint8_t>& truth_table() const { return truth_; }
    const std::vector<long>& weight_coeffs() const { return cm_; }
    uint8_t eval(uint32_t x) const { return truth_[x]; }

    std::string anf_string() const;

  private:
    int j_;
    std::vector<uint32_t> monomials_;
    std::vector<uint8_t> truth_;
    std::vector<long> cm_;
};

/** Brute-force oracle: sums (-1)^{sigma(x)+F(x)} over all 2^n inputs.
 *  Capped at n <= 24; this is the independent check for every other sum
 *  computation in the library. */
long exp_sum_truthtable(int n, const DegreeSet& d, const Perturbation* f = nullptr);

/** c0 = 2^{-r} sum_{j=0}^{2^r-1} (-1)^{parity_exponent(j)}, the limit of
 *  S/2^n.  Exact rational with a power-of-two denominator; zero means
 *  asymptotically balanced. */
mpq_class asymptotic_constant(const DegreeSet& d);

/** S(sigma_{n,[k1..ks]} + F) via the weight-class reduction to exponential
 *  sums in n - j variables.  Inner degree multisets are reduced mod 2;
 *  a degree hitting exactly 0 flips the sign of its inner sum (sigma_{m,0}
 *  is the constant 1); negative degrees are dropped.  Requires n > F.j. */
mpz_class perturbation_reduce(const DegreeSet& d, const Perturbation& f, int n);

/** All n = 2^{l+1} D - 1 <= max_n: the positions where S(sigma_{n,2^l})
 *  vanishes identically. */
std::vector<long> trivial_zero_positions(int l, long max_n);

}  // namespace symsum
