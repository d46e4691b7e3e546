/* Copyright (C) 2026 the symsum authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace symsum {

/** Integer polynomial, constant term first.  Characteristic polynomials of
 *  recurrences are always monic; general polynomials only need a nonzero
 *  leading coefficient. */
struct IntPolynomial {
    std::vector<mpz_class> coeffs;

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> c) : coeffs(std::move(c)) {
        normalize();
        if (coeffs.empty())
            throw std::invalid_argument("IntPolynomial: zero polynomial");
    }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }
    const mpz_class& leading() const { return coeffs.back(); }
    const mpz_class& constant() const { return coeffs.front(); }

    mpz_class coeff(int i) const {
        if (i < 0 || i > degree()) return mpz_class(0);
        return coeffs[static_cast<size_t>(i)];
    }

    void normalize() {
        while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
        if (coeffs.size() == 1 && coeffs[0] == 0) coeffs.clear();
    }

    bool operator==(const IntPolynomial& o) const { return coeffs == o.coeffs; }

    mpz_class eval(const mpz_class& x) const {
        mpz_class acc = 0;
        for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
        return acc;
    }
};

inline IntPolynomial poly_one() { return IntPolynomial({mpz_class(1)}); }

inline IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> c(a.coeffs.size() + b.coeffs.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        for (size_t j = 0; j < b.coeffs.size(); ++j)
            c[i + j] += a.coeffs[i] * b.coeffs[j];
    return IntPolynomial(std::move(c));
}

/** Exact division a / b; throws if the division leaves a remainder. */
inline IntPolynomial poly_divexact(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> rem = a.coeffs;
    if (rem.size() < b.coeffs.size())
        throw std::invalid_argument("poly_divexact: degree(a) < degree(b)");
    std::vector<mpz_class> q(rem.size() - b.coeffs.size() + 1, mpz_class(0));
    for (size_t i = q.size(); i-- > 0;) {
        mpz_class t = rem[i + b.coeffs.size() - 1];
        if (t % b.coeffs.back() != 0)
            throw std::invalid_argument("poly_divexact: not divisible");
        t /= b.coeffs.back();
        q[i] = t;
        for (size_t j = 0; j < b.coeffs.size(); ++j)
            rem[i + j] -= t * b.coeffs[j];
    }
    for (const auto& c : rem)
        if (c != 0) throw std::invalid_argument("poly_divexact: not divisible");
    return IntPolynomial(std::move(q));
}

inline bool poly_divides(const IntPolynomial& b, const IntPolynomial& a) {
    try {
        poly_divexact(a, b);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

/** ASCII form in descending powers, e.g. "t^3 - 4*t^2 + 6*t - 4". */
std::string poly_to_string(const IntPolynomial& p);

}  // namespace symsum
