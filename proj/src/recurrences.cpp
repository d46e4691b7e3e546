/* Copyright (C) 2026 the symsum authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 */
#include "symsum/recurrences.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace symsum {

std::string poly_to_string(const IntPolynomial& p) {
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        const mpz_class& c = p.coeff(i);
        if (c == 0 && !(first && i == 0)) continue;
        mpz_class a = abs(c);
        if (first) {
            if (c < 0) os << '-';
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (i == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << '*';
            os << 't';
            if (i > 1) os << '^' << i;
        }
    }
    if (first) os << '0';
    return os.str();
}

IntPolynomial cyclotomic_shifted(int i) {
    if (i < 2) throw std::invalid_argument("cyclotomic_shifted: requires i >= 2");
    const long half = 1L << (i - 1);  // degree of Phi_{2^i}
    std::vector<mpz_class> c(static_cast<size_t>(half) + 1);
    // (t-1)^half expanded, then +1 on the constant term.
    mpz_class binom = 1;
    for (long j = 0; j <= half; ++j) {
        c[static_cast<size_t>(j)] = ((half - j) % 2 == 0) ? binom : -binom;
        binom *= half - j;
        mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(j + 1));
    }
    c[0] += 1;
    return IntPolynomial(std::move(c));
}

IntPolynomial full_charpoly(int r) {
    if (r < 1) throw std::invalid_argument("full_charpoly: requires r >= 1");
    IntPolynomial p({mpz_class(-2), mpz_class(1)});  // t - 2
    for (int i = 2; i <= r; ++i) p = poly_mul(p, cyclotomic_shifted(i));
    return p;
}

IntPolynomial minimal_charpoly_elementary(int k) {
    if (k < 1) throw std::invalid_argument("minimal_charpoly_elementary: requires k >= 1");
    if (k == 1) {
        // S(sigma_{n,1}) = (1-1)^n = 0 for every n >= 1, so the 2-adic
        // construction would give an empty product.  t - 2 is the smallest
        // usable annihilator in the factor lattice.
        return IntPolynomial({mpz_class(-2), mpz_class(1)});
    }
    const unsigned kbar = 2u * (static_cast<unsigned>(k) / 2u) + 1u;
    const bool power_of_two = std::has_single_bit(static_cast<unsigned>(k));
    IntPolynomial p = power_of_two ? poly_one()
                                   : IntPolynomial({mpz_class(-2), mpz_class(1)});
    for (int a = 1; (1u << a) <= kbar; ++a)
        if (kbar & (1u << a)) p = poly_mul(p, cyclotomic_shifted(a + 1));
    return p;
}

namespace {

bool recurrence_annihilates(const IntPolynomial& chi, const std::vector<mpz_class>& window) {
    const size_t deg = static_cast<size_t>(chi.degree());
    if (window.size() <= deg) return false;
    for (size_t n = deg; n < window.size(); ++n) {
        mpz_class acc = 0;
        for (size_t i = 1; i <= deg; ++i)
            acc -= chi.coeff(static_cast<int>(deg - i)) * window[n - i];
        if (acc != window[n]) return false;
    }
    return true;
}

}  // namespace

IntPolynomial minimal_charpoly_general(const DegreeSet& d) {
    const int r = d.r();
    if (r == 1) {
        // Only d = {1}: the zero sequence; consistent with the elementary case.
        return IntPolynomial({mpz_class(-2), mpz_class(1)});
    }
    const IntPolynomial mandatory = cyclotomic_shifted(r);
    // Optional factors: t-2 and Phi_4(t-1) .. Phi_{2^{r-1}}(t-1).
    std::vector<IntPolynomial> optional;
    optional.push_back(IntPolynomial({mpz_class(-2), mpz_class(1)}));
    for (int i = 2; i < r; ++i) optional.push_back(cyclotomic_shifted(i));

    const long full_deg = (1L << r) - 1;
    const long window_len = 2 * full_deg + 8;
    std::vector<mpz_class> window;
    window.reserve(static_cast<size_t>(window_len));
    for (long n = 1; n <= window_len; ++n)
        window.push_back(exp_sum_exact(static_cast<int>(n), d).value);

    struct Candidate {
        long degree;
        unsigned mask;
    };
    std::vector<Candidate> cands;
    for (unsigned mask = 0; mask < (1u << optional.size()); ++mask) {
        long deg = mandatory.degree();
        for (size_t i = 0; i < optional.size(); ++i)
            if (mask & (1u << i)) deg += optional[i].degree();
        cands.push_back({deg, mask});
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.mask < b.mask;
    });

    for (const Candidate& c : cands) {
        IntPolynomial chi = mandatory;
        for (size_t i = 0; i < optional.size(); ++i)
            if (c.mask & (1u << i)) chi = poly_mul(chi, optional[i]);
        if (recurrence_annihilates(chi, window)) return chi;
    }
    // Unreachable: the full product always annihilates.
    throw std::logic_error("minimal_charpoly_general: no annihilator found");
}

std::vector<mpz_class> Recurrence::coefficients() const {
    const int deg = charpoly.degree();
    std::vector<mpz_class> a(static_cast<size_t>(deg));
    for (int i = 1; i <= deg; ++i) a[static_cast<size_t>(i - 1)] = -charpoly.coeff(deg - i);
    return a;
}

Recurrence make_recurrence(const DegreeSet& d, bool minimal) {
    Recurrence rec;
    if (!minimal)
        rec.charpoly = full_charpoly(d.r());
    else if (d.size() == 1)
        rec.charpoly = minimal_charpoly_elementary(d.max_degree());
    else
        rec.charpoly = minimal_charpoly_general(d);
    rec.start = 1;
    const int deg = rec.charpoly.degree();
    rec.initial.reserve(static_cast<size_t>(deg));
    for (int n = 1; n <= deg; ++n) rec.initial.push_back(exp_sum_exact(n, d).value);
    return rec;
}

std::vector<mpz_class> generate_exact(const Recurrence& rec, long count) {
    if (count < 1) throw std::invalid_argument("generate_exact: count must be >= 1");
    const size_t deg = rec.initial.size();
    const std::vector<mpz_class> a = rec.coefficients();
    std::vector<mpz_class> out;
    out.reserve(static_cast<size_t>(count));
    for (size_t i = 0; i < deg && static_cast<long>(i) < count; ++i)
        out.push_back(rec.initial[i]);
    while (static_cast<long>(out.size()) < count) {
        mpz_class next = 0;
        for (size_t i = 1; i <= deg; ++i) next += a[i - 1] * out[out.size() - i];
        out.push_back(std::move(next));
    }
    return out;
}

namespace {

uint64_t mod_reduce(const mpz_class& v, uint64_t m) {
    mpz_class t = v % static_cast<unsigned long>(m);
    if (t < 0) t += static_cast<unsigned long>(m);
    return t.get_ui();
}

}  // namespace

ModSequence::ModSequence(const Recurrence& rec, uint64_t m) : m_(m) {
    if (m < 2) throw std::invalid_argument("ModSequence: modulus must be >= 2");
    if (m > (uint64_t{1} << 62)) throw std::invalid_argument("ModSequence: modulus too large");
    for (const mpz_class& c : rec.coefficients()) a_.push_back(mod_reduce(c, m));
    for (const mpz_class& v : rec.initial) window_.push_back(mod_reduce(v, m));
}

uint64_t ModSequence::next() {
    const size_t deg = window_.size();
    if (static_cast<size_t>(emitted_) < deg) {
        return window_[static_cast<size_t>(emitted_++)];
    }
    // pos_ indexes the oldest entry of the ring buffer.
    unsigned __int128 acc = 0;
    for (size_t i = 0; i < deg; ++i) {
        // a_[i] multiplies x_{n-1-i}: the newest entries first.
        const uint64_t x = window_[(pos_ + deg - 1 - i) % deg];
        acc += static_cast<unsigned __int128>(a_[i]) * x;
        if ((i & 7u) == 7u) acc %= m_;
    }
    const uint64_t value = static_cast<uint64_t>(acc % m_);
    window_[pos_] = value;
    pos_ = (pos_ + 1) % deg;
    ++emitted_;
    return value;
}

std::vector<uint64_t> generate_mod(const Recurrence& rec, uint64_t m, long count) {
    if (count < 1) throw std::invalid_argument("generate_mod: count must be >= 1");
    ModSequence seq(rec, m);
    std::vector<uint64_t> out;
    out.reserve(static_cast<size_t>(count));
    for (long i = 0; i < count; ++i) out.push_back(seq.next());
    return out;
}

ClosedFormFamily closed_form_family_from_string(const std::string& name) {
    if (name == "sigma3") return ClosedFormFamily::Sigma3;
    if (name == "sigma31") return ClosedFormFamily::Sigma31;
    if (name == "sigma321") return ClosedFormFamily::Sigma321;
    if (name == "sigma3pert") return ClosedFormFamily::Sigma3Pert;
    throw std::invalid_argument("unknown closed-form family: " + name);
}

namespace {

mpz_class pow2(long e) {
    mpz_class v = 1;
    v <<= e;
    return v;
}

}  // namespace

mpz_class closed_form_eval(ClosedFormFamily family, long n) {
    if (n < 1) throw std::invalid_argument("closed_form_eval: n must be >= 1");
    const long m = n / 4;
    const long rem = n % 4;
    const long sgn = (m % 2 == 0) ? 1 : -1;
    switch (family) {
        case ClosedFormFamily::Sigma3:
            // 2^{n-1} + 2^{n/2} sin(n pi / 4), split on n mod 4.
            switch (rem) {
                case 0: return pow2(4 * m - 1);
                case 1: return pow2(2 * m) * (pow2(2 * m) + sgn);
                case 2: return pow2(2 * m + 1) * (pow2(2 * m) + sgn);
                default: return pow2(2 * m + 1) * (pow2(2 * m + 1) + sgn);
            }
        case ClosedFormFamily::Sigma31:
            // 2^{n-1} - 2^{n/2} sin(n pi / 4).
            switch (rem) {
                case 0: return pow2(4 * m - 1);
                case 1: return pow2(2 * m) * (pow2(2 * m) - sgn);
                case 2: return pow2(2 * m + 1) * (pow2(2 * m) - sgn);
                default: return pow2(2 * m + 1) * (pow2(2 * m + 1) - sgn);
            }
        case ClosedFormFamily::Sigma321:
            // -2^{n-1} + 2^{n/2} cos(n pi / 4).
            switch (rem) {
                case 0: return -pow2(2 * m) * (pow2(2 * m - 1) - sgn);
                case 1: return -pow2(2 * m) * (pow2(2 * m) - sgn);
                case 2: return -pow2(4 * m + 1);
                default: return -pow2(2 * m + 1) * (pow2(2 * m + 1) + sgn);
            }
        case ClosedFormFamily::Sigma3Pert: {
            if (n < 4)
                throw std::invalid_argument("closed_form_eval: sigma3pert needs n >= 4");
            mpz_class t;
            long shift;
            switch (rem) {
                case 0: t = pow2(2 * m) + sgn * 12; shift = 2 * m - 3; break;
                case 1: t = pow2(2 * m) + sgn * 8;  shift = 2 * m - 2; break;
                case 2: t = pow2(2 * m) + sgn * 2;  shift = 2 * m - 1; break;
                default: t = pow2(2 * m) - sgn * 2; shift = 2 * m;     break;
            }
            if (shift >= 0) return -(t << shift);
            // Only n = 4 reaches here (m = 1, shift = -1); t is even.
            mpz_class half = t >> 1;
            if (half * 2 != t) throw std::logic_error("closed_form_eval: inexact halving");
            return -half;
        }
    }
    throw std::invalid_argument("closed_form_eval: unknown family");
}

}  // namespace symsum
