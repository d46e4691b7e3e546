/* Copyright (C) 2026 the symsum authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symsum/intpoly.hpp"
#include "symsum/symfun.hpp"

namespace symsum {

/** Phi_{2^i}(t-1) = (t-1)^{2^{i-1}} + 1, expanded over Z.  Requires i >= 2. */
IntPolynomial cyclotomic_shifted(int i);

/** (t-2) * prod_{i=2}^{r} Phi_{2^i}(t-1), degree 2^r - 1.  Its recurrence
 *  coefficients are (-1)^{j-1} C(2^r, j): every exponential-sum sequence with
 *  max degree below 2^r satisfies it. */
IntPolynomial full_charpoly(int r);

/** Minimal characteristic polynomial of {S(sigma_{n,k})}: with
 *  kbar = 2*floor(k/2)+1 = 1 + 2^{a_1} + ... + 2^{a_l},
 *  chi_k = (t-2)^{eps(k)} prod_j Phi_{2^{a_j+1}}(t-1), eps(k) = 0 iff k is a
 *  power of two.  Degree 2*floor(k/2) + eps(k).  k = 1 is degenerate (the
 *  sequence is identically zero) and returns t - 2. */
IntPolynomial minimal_charpoly_elementary(int k);

/** Minimal annihilator for a general degree set: searches the square-free
 *  products of {t-2, Phi_4(t-1), ..., Phi_{2^r}(t-1)} that contain
 *  Phi_{2^r}(t-1), in increasing degree order, and returns the first whose
 *  recurrence annihilates the exact sequence over a window of
 *  2*deg(full_charpoly(r)) + 8 terms.  Always divides full_charpoly(r). */
IntPolynomial minimal_charpoly_general(const DegreeSet& d);

/** A linear recurrence x_n = a_1 x_{n-1} + ... + a_D x_{n-D} given by its
 *  monic characteristic polynomial, with initial values
 *  x_start .. x_{start+D-1}. */
struct Recurrence {
    IntPolynomial charpoly;
    std::vector<mpz_class> initial;
    long start = 1;

    int order() const { return charpoly.degree(); }
    /// a_i = -(coefficient of t^{D-i}), i = 1..D.
    std::vector<mpz_class> coefficients() const;
};

/** Builds the recurrence of {S(sigma_{n,d})}: minimal or full charpoly,
 *  start = 1, initial values from exp_sum_exact(1..D). */
Recurrence make_recurrence(const DegreeSet& d, bool minimal);

/** First `count` terms x_start .. x_{start+count-1}, exact. */
std::vector<mpz_class> generate_exact(const Recurrence& rec, long count);

/** Streaming generator of the sequence reduced mod m: constant memory in the
 *  number of emitted terms, no big-integer arithmetic after construction. */
class ModSequence {
  public:
    ModSequence(const Recurrence& rec, uint64_t m);
    /// x_{start}, x_{start+1}, ... in order.
    uint64_t next();
    uint64_t modulus() const { return m_; }

  private:
    uint64_t m_;
    std::vector<uint64_t> a_;       // recurrence coefficients mod m
    std::vector<uint64_t> window_;  // ring buffer of the last D terms
    size_t pos_ = 0;
    long long emitted_ = 0;
};

/** First `count` terms mod m. */
std::vector<uint64_t> generate_mod(const Recurrence& rec, uint64_t m, long count);

enum class ClosedFormFamily { Sigma3, Sigma31, Sigma321, Sigma3Pert };

ClosedFormFamily closed_form_family_from_string(const std::string& name);

/** Exact piecewise closed forms for the four worked degree-3 families,
 *  evaluated with the 4-way split on n mod 4 in integer arithmetic only.
 *  Sigma3Pert is the perturbation sigma_{n,3} + X1 + X2X3 + X1X2X3 and
 *  requires n >= 4. */
mpz_class closed_form_eval(ClosedFormFamily family, long n);

}  // namespace symsum
