/* Copyright (C) 2026 the symsum authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "symsum/intpoly.hpp"

namespace symsum {

// ---------------------------------------------------------------------------
// Modular arithmetic on 64-bit words (moduli < 2^62).
// ---------------------------------------------------------------------------

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t m);
uint64_t pow_mod(uint64_t a, const mpz_class& e, uint64_t m);
uint64_t inv_mod(uint64_t a, uint64_t m);

/** Deterministic Miller-Rabin, valid for the whole 64-bit range. */
bool is_prime_u64(uint64_t n);

/** An odd prime p with 3 <= p < 2^62, certified at construction. */
struct PrimeModulus {
    uint64_t value;
    explicit PrimeModulus(uint64_t p);
};

// ---------------------------------------------------------------------------
// Integer factorization.
// ---------------------------------------------------------------------------

struct Factorization {
    mpz_class n;
    std::vector<std::pair<mpz_class, unsigned>> factors;  // (prime, exponent)
    bool complete = true;
    mpz_class cofactor = 1;  // composite remainder when !complete

    mpz_class product() const;
};

inline constexpr uint64_t kDefaultRhoBudget = 100'000'000;

/** Trial division to 10^6, then Pollard rho (Brent) within the step budget.
 *  Exhausting the budget is not an error: the result carries complete=false
 *  and the unfactored composite cofactor. */
Factorization factor_integer(const mpz_class& n, uint64_t rho_budget = kDefaultRhoBudget);

/** Least e >= 1 with a^e = 1 mod n, via factorization of the group exponent
 *  (lambda(n) for n a power of two, n-1 for prime n, phi(n) otherwise) and
 *  exponent descent.  Throws if gcd(a, n) != 1. */
uint64_t ord_mod(uint64_t a, uint64_t n);

/** All divisors of the factored value, sorted ascending. */
std::vector<mpz_class> sorted_divisors(const std::vector<std::pair<mpz_class, unsigned>>& factors);

// ---------------------------------------------------------------------------
// Polynomials over F_p: coefficient vectors, constant term first, no trailing
// zeros (the zero polynomial is the empty vector).
// ---------------------------------------------------------------------------

using FpPoly = std::vector<uint64_t>;

long fp_deg(const FpPoly& a);
void fp_normalize(FpPoly& a);
bool fp_is_one(const FpPoly& a);
FpPoly fp_from_int_poly(const IntPolynomial& f, uint64_t p);
FpPoly fp_add(const FpPoly& a, const FpPoly& b, uint64_t p);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b, uint64_t p);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b, uint64_t p);
void fp_divrem(const FpPoly& a, const FpPoly& b, uint64_t p, FpPoly& q, FpPoly& r);
FpPoly fp_mod(const FpPoly& a, const FpPoly& b, uint64_t p);
FpPoly fp_make_monic(const FpPoly& a, uint64_t p);
FpPoly fp_gcd(FpPoly a, FpPoly b, uint64_t p);
FpPoly fp_derivative(const FpPoly& a, uint64_t p);
FpPoly fp_powmod(const FpPoly& base, uint64_t e, const FpPoly& mod, uint64_t p);
FpPoly fp_powmod(const FpPoly& base, const mpz_class& e, const FpPoly& mod, uint64_t p);

/** Complete irreducible factorization of a monic integer polynomial over F_p
 *  (squarefree split, then distinct-degree separation, then equal-degree
 *  splitting).  Factors are monic, sorted by degree then coefficients. */
std::vector<std::pair<FpPoly, unsigned>> factor_poly_mod_p(const IntPolynomial& f,
                                                           const PrimeModulus& p);

// ---------------------------------------------------------------------------
// Extension fields F_{p^d} = F_p[t]/(f), f monic irreducible.
// ---------------------------------------------------------------------------

class ExtField {
  public:
    ExtField(const PrimeModulus& p, FpPoly defining_poly);

    uint64_t p() const { return p_; }
    int degree() const { return static_cast<int>(defining_.size()) - 1; }
    const FpPoly& defining_poly() const { return defining_; }
    mpz_class group_order() const;  // p^d - 1

    FpPoly one() const { return {1}; }
    FpPoly generator() const;  // the class of t
    FpPoly mul(const FpPoly& a, const FpPoly& b) const;
    FpPoly pow(const FpPoly& a, const mpz_class& e) const;

  private:
    uint64_t p_;
    FpPoly defining_;
};

struct ExtFieldElement {
    std::shared_ptr<const ExtField> field;
    FpPoly coords;
};

/** Least e >= 1 with x^e = 1, by stripping primes from the factored group
 *  order.  Returns nullopt ("order unavailable") when the factorization is
 *  incomplete; throws on x = 0. */
std::optional<mpz_class> element_order(const ExtFieldElement& x, const Factorization& group_order);

}  // namespace symsum
