/* Copyright (C) 2026 the symsum authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 */
#include "symsum/symfun.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace symsum {

DegreeSet::DegreeSet(std::vector<int> degrees) : degrees_(std::move(degrees)) {
    if (degrees_.empty())
        throw std::invalid_argument("DegreeSet: empty degree list");
    for (size_t i = 0; i < degrees_.size(); ++i) {
        if (degrees_[i] < 1)
            throw std::invalid_argument("DegreeSet: degrees must be >= 1");
        if (degrees_[i] > (1 << 24))
            throw std::invalid_argument("DegreeSet: degree out of supported range");
        if (i > 0 && degrees_[i] <= degrees_[i - 1])
            throw std::invalid_argument("DegreeSet: degrees must be strictly increasing");
    }
    int ks = degrees_.back();
    r_ = 1;
    while ((1 << r_) <= ks) ++r_;
}

DegreeSet DegreeSet::from_multiset(std::vector<int> degrees) {
    std::sort(degrees.begin(), degrees.end());
    std::vector<int> reduced;
    for (size_t i = 0; i < degrees.size();) {
        size_t j = i;
        while (j < degrees.size() && degrees[j] == degrees[i]) ++j;
        if ((j - i) % 2 == 1) reduced.push_back(degrees[i]);
        i = j;
    }
    if (reduced.empty())
        throw std::invalid_argument("DegreeSet: multiset cancels to the empty set");
    return DegreeSet(std::move(reduced));
}

bool DegreeSet::contains(int k) const {
    return std::binary_search(degrees_.begin(), degrees_.end(), k);
}

std::string DegreeSet::to_string() const {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < degrees_.size(); ++i) {
        if (i) os << ',';
        os << degrees_[i];
    }
    os << ']';
    return os.str();
}

int parity_exponent(unsigned long long j, const DegreeSet& d) {
    int parity = 0;
    for (int k : d.degrees()) {
        unsigned long long uk = static_cast<unsigned long long>(k);
        if ((j & uk) == uk) parity ^= 1;
    }
    return parity;
}

ExactSum exp_sum_exact(int n, const DegreeSet& d) {
    if (n < 1) throw std::invalid_argument("exp_sum_exact: n must be >= 1");
    mpz_class sum = 0;
    mpz_class binom = 1;  // C(n,0)
    for (int j = 0; j <= n; ++j) {
        if (parity_exponent(static_cast<unsigned long long>(j), d))
            sum -= binom;
        else
            sum += binom;
        // C(n,j+1) = C(n,j) (n-j)/(j+1)
        binom *= n - j;
        mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(j + 1));
    }
    return ExactSum{n, std::move(sum)};
}

Perturbation::Perturbation(int j, std::vector<uint32_t> monomial_masks)
    : j_(j), monomials_(std::move(monomial_masks)) {
    if (j_ < 1 || j_ > 24)
        throw std::invalid_argument("Perturbation: variable count out of range");
    const uint32_t all = (j_ == 32) ? ~0u : ((1u << j_) - 1);
    for (uint32_t m : monomials_)
        if ((m & ~all) != 0)
            throw std::invalid_argument("Perturbation: monomial uses a variable beyond j");
    const size_t size = size_t{1} << j_;
    truth_.assign(size, 0);
    for (size_t x = 0; x < size; ++x) {
        uint8_t v = 0;
        for (uint32_t m : monomials_)
            if ((x & m) == m) v ^= 1;
        truth_[x] = v;
    }
    cm_.assign(static_cast<size_t>(j_) + 1, 0);
    for (size_t x = 0; x < size; ++x) {
        int w = std::popcount(static_cast<uint32_t>(x));
        cm_[static_cast<size_t>(w)] += truth_[x] ? -1 : 1;
    }
}

Perturbation Perturbation::parse_anf(const std::string& text, int j) {
    std::vector<uint32_t> masks;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
        if (tok.empty())
            throw std::invalid_argument("Perturbation ANF: empty monomial");
        if (tok == "0") {
            masks.push_back(0);  // the constant 1
            continue;
        }
        uint32_t mask = 0;
        std::stringstream ms(tok);
        std::string var;
        while (std::getline(ms, var, ',')) {
            int idx = std::stoi(var);
            if (idx < 1 || idx > j)
                throw std::invalid_argument("Perturbation ANF: variable index out of range");
            mask |= 1u << (idx - 1);
        }
        masks.push_back(mask);
    }
    if (masks.empty())
        throw std::invalid_argument("Perturbation ANF: no monomials");
    return Perturbation(j, std::move(masks));
}

std::string Perturbation::anf_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < monomials_.size(); ++i) {
        if (i) os << ';';
        uint32_t m = monomials_[i];
        if (m == 0) {
            os << '0';
            continue;
        }
        bool first = true;
        for (int v = 0; v < j_; ++v) {
            if (m & (1u << v)) {
                if (!first) os << ',';
                os << (v + 1);
                first = false;
            }
        }
    }
    return os.str();
}

long exp_sum_truthtable(int n, const DegreeSet& d, const Perturbation* f) {
    if (n < 1) throw std::invalid_argument("exp_sum_truthtable: n must be >= 1");
    if (n > 24) throw std::domain_error("exp_sum_truthtable: n > 24 exceeds oracle scale");
    if (f && f->var_count() >= n)
        throw std::invalid_argument("exp_sum_truthtable: perturbation needs f.j < n");
    // sigma(x) depends only on the weight of x.
    std::vector<uint8_t> sig(static_cast<size_t>(n) + 1);
    for (int w = 0; w <= n; ++w)
        sig[static_cast<size_t>(w)] =
            static_cast<uint8_t>(parity_exponent(static_cast<unsigned long long>(w), d));
    const uint64_t size = uint64_t{1} << n;
    const uint32_t fmask = f ? ((1u << f->var_count()) - 1) : 0;
    long sum = 0;
    for (uint64_t x = 0; x < size; ++x) {
        int w = std::popcount(x);
        uint8_t v = sig[static_cast<size_t>(w)];
        if (f) v ^= f->eval(static_cast<uint32_t>(x) & fmask);
        sum += v ? -1 : 1;
    }
    return sum;
}

mpq_class asymptotic_constant(const DegreeSet& d) {
    const int r = d.r();
    long acc = 0;
    for (long j = 0; j < (1L << r); ++j)
        acc += parity_exponent(static_cast<unsigned long long>(j), d) ? -1 : 1;
    mpq_class c0(acc, 1L << r);
    c0.canonicalize();
    return c0;
}

mpz_class perturbation_reduce(const DegreeSet& d, const Perturbation& f, int n) {
    const int j = f.var_count();
    if (n <= j) throw std::invalid_argument("perturbation_reduce: requires n > f.j");
    const auto& cm = f.weight_coeffs();
    mpz_class total = 0;
    for (int m = 0; m <= j; ++m) {
        if (cm[static_cast<size_t>(m)] == 0) continue;
        // Inner degree multiset {k_l - i : C(m,i) odd}, reduced mod 2.
        // k_l - i = 0 flips the sign (sigma_{m,0} is the constant 1);
        // k_l - i < 0 terms do not exist.
        std::vector<int> inner;
        int sign_flips = 0;
        for (int i = 0; i <= m; ++i) {
            if ((static_cast<unsigned>(m) & static_cast<unsigned>(i)) != static_cast<unsigned>(i))
                continue;  // C(m,i) even
            for (int k : d.degrees()) {
                if (k - i > 0)
                    inner.push_back(k - i);
                else if (k - i == 0)
                    ++sign_flips;
            }
        }
        // The top degree ks survives (it arises only from i = 0), so the
        // reduced set is never empty.
        DegreeSet inner_set = DegreeSet::from_multiset(std::move(inner));
        mpz_class s = exp_sum_exact(n - j, inner_set).value;
        if (sign_flips % 2) s = -s;
        total += static_cast<long>(cm[static_cast<size_t>(m)]) * s;
    }
    return total;
}

std::vector<long> trivial_zero_positions(int l, long max_n) {
    if (l < 0) throw std::invalid_argument("trivial_zero_positions: l must be >= 0");
    std::vector<long> out;
    const long step = 1L << (l + 1);
    for (long n = step - 1; n <= max_n; n += step) out.push_back(n);
    return out;
}

}  // namespace symsum
