/* Copyright (C) 2026 the symsum authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 */
#include "symsum/finite_fields.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace symsum {

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

uint64_t pow_mod(uint64_t a, const mpz_class& e, uint64_t m) {
    if (e < 0) throw std::invalid_argument("pow_mod: negative exponent");
    uint64_t r = 1 % m;
    a %= m;
    const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = mul_mod(r, r, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mul_mod(r, a, m);
    }
    return r;
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(m), nr = static_cast<long long>(a % m);
    while (nr != 0) {
        long long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::invalid_argument("inv_mod: not invertible");
    if (t < 0) t += static_cast<long long>(m);
    return static_cast<uint64_t>(t);
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Witness set covering the full 64-bit range.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

PrimeModulus::PrimeModulus(uint64_t p) : value(p) {
    if (p < 3 || p % 2 == 0)
        throw std::invalid_argument("PrimeModulus: requires an odd prime >= 3");
    if (p >= (uint64_t{1} << 62))
        throw std::invalid_argument("PrimeModulus: modulus must be < 2^62");
    if (!is_prime_u64(p)) throw std::invalid_argument("PrimeModulus: not prime");
}

mpz_class Factorization::product() const {
    mpz_class r = 1;
    for (const auto& [q, e] : factors) {
        for (unsigned i = 0; i < e; ++i) r *= q;
    }
    r *= cofactor;
    return r;
}

namespace {

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = [] {
        constexpr uint32_t limit = 1'000'000;
        std::vector<bool> sieve(limit + 1, true);
        std::vector<uint32_t> out;
        for (uint32_t i = 2; i <= limit; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (uint64_t j = uint64_t{i} * i; j <= limit; j += i) sieve[j] = false;
        }
        return out;
    }();
    return primes;
}

bool probably_prime(const mpz_class& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

/** Brent's cycle variant of Pollard rho; returns a nontrivial factor or
 *  nullopt when the step budget runs out.  Deterministic. */
std::optional<mpz_class> pollard_rho(const mpz_class& n, uint64_t& budget) {
    for (unsigned long c = 1; budget > 0; ++c) {
        mpz_class y = 2, x, q = 1, g = 1, xs;
        unsigned long r = 1;
        constexpr unsigned long batch = 128;
        while (g == 1 && budget > 0) {
            x = y;
            for (unsigned long i = 0; i < r && budget > 0; ++i) {
                y = (y * y + c) % n;
                --budget;
            }
            for (unsigned long k = 0; k < r && g == 1 && budget > 0; k += batch) {
                xs = y;
                const unsigned long steps = std::min(batch, r - k);
                for (unsigned long i = 0; i < steps && budget > 0; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                    --budget;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            r *= 2;
        }
        if (g == n) {
            // Backtrack step by step from the last batch.
            g = 1;
            while (g == 1 && budget > 0) {
                xs = (xs * xs + c) % n;
                --budget;
                mpz_class diff = abs(x - xs);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g != 1 && g != n) return g;
        // g == n: retry with the next polynomial offset.
    }
    return std::nullopt;
}

}  // namespace

Factorization factor_integer(const mpz_class& n, uint64_t rho_budget) {
    if (n < 2) throw std::invalid_argument("factor_integer: n must be >= 2");
    Factorization out;
    out.n = n;
    mpz_class c = n;
    for (uint32_t q : small_primes()) {
        if (mpz_cmp_ui(c.get_mpz_t(), 1) == 0) break;
        if (mpz_divisible_ui_p(c.get_mpz_t(), q)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(c.get_mpz_t(), q)) {
                mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), q);
                ++e;
            }
            out.factors.emplace_back(mpz_class(q), e);
        }
        // Everything below q^2 remaining is prime.
        if (mpz_cmp_ui(c.get_mpz_t(), uint64_t{q} * q) < 0 && c > 1) break;
    }
    std::vector<mpz_class> stack;
    if (c > 1) stack.push_back(c);
    std::vector<mpz_class> primes_found;
    while (!stack.empty()) {
        mpz_class v = stack.back();
        stack.pop_back();
        if (probably_prime(v)) {
            primes_found.push_back(v);
            continue;
        }
        auto d = pollard_rho(v, rho_budget);
        if (!d) {
            out.complete = false;
            out.cofactor *= v;
            continue;
        }
        stack.push_back(*d);
        stack.push_back(v / *d);
    }
    std::sort(primes_found.begin(), primes_found.end());
    for (size_t i = 0; i < primes_found.size();) {
        size_t j = i;
        while (j < primes_found.size() && primes_found[j] == primes_found[i]) ++j;
        out.factors.emplace_back(primes_found[i], static_cast<unsigned>(j - i));
        i = j;
    }
    std::sort(out.factors.begin(), out.factors.end());
    return out;
}

uint64_t ord_mod(uint64_t a, uint64_t n) {
    if (n < 2) throw std::invalid_argument("ord_mod: n must be >= 2");
    a %= n;
    if (std::gcd(a, n) != 1) throw std::invalid_argument("ord_mod: gcd(a, n) != 1");
    if (n <= 2) return 1;
    // A multiple of the order: lambda for 2-powers, p-1 for primes, phi else.
    uint64_t exponent;
    if ((n & (n - 1)) == 0) {
        exponent = (n <= 4) ? n / 2 : n / 4;
    } else if (is_prime_u64(n)) {
        exponent = n - 1;
    } else {
        Factorization fn = factor_integer(mpz_class(static_cast<unsigned long>(n)));
        mpz_class phi = 1;
        for (const auto& [q, e] : fn.factors) {
            mpz_class qe = 1;
            for (unsigned i = 0; i + 1 < e; ++i) qe *= q;
            phi *= qe * (q - 1);
        }
        exponent = phi.get_ui();
    }
    Factorization fe = factor_integer(mpz_class(static_cast<unsigned long>(exponent)));
    uint64_t e = exponent;
    for (const auto& [qz, mult] : fe.factors) {
        const uint64_t q = qz.get_ui();
        (void)mult;
        while (e % q == 0 && pow_mod(a, e / q, n) == 1) e /= q;
    }
    return e;
}

std::vector<mpz_class> sorted_divisors(const std::vector<std::pair<mpz_class, unsigned>>& factors) {
    std::vector<mpz_class> divs{mpz_class(1)};
    for (const auto& [q, e] : factors) {
        const size_t base = divs.size();
        mpz_class qe = 1;
        for (unsigned i = 1; i <= e; ++i) {
            qe *= q;
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * qe);
        }
        if (divs.size() > 2'000'000)
            throw std::runtime_error("sorted_divisors: divisor count too large");
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// ---------------------------------------------------------------------------
// F_p[t]
// ---------------------------------------------------------------------------

long fp_deg(const FpPoly& a) { return static_cast<long>(a.size()) - 1; }

void fp_normalize(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

bool fp_is_one(const FpPoly& a) { return a.size() == 1 && a[0] == 1; }

FpPoly fp_from_int_poly(const IntPolynomial& f, uint64_t p) {
    FpPoly out(f.coeffs.size());
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
        mpz_class r = f.coeffs[i] % static_cast<unsigned long>(p);
        if (r < 0) r += static_cast<unsigned long>(p);
        out[i] = r.get_ui();
    }
    fp_normalize(out);
    return out;
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b, uint64_t p) {
    FpPoly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) {
        uint64_t v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        c[i] = v >= p ? v - p : v;
    }
    fp_normalize(c);
    return c;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, uint64_t p) {
    FpPoly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) {
        uint64_t av = i < a.size() ? a[i] : 0;
        uint64_t bv = i < b.size() ? b[i] : 0;
        c[i] = av >= bv ? av - bv : av + p - bv;
    }
    fp_normalize(c);
    return c;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            c[i + j] = (c[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p;
        }
    }
    fp_normalize(c);
    return c;
}

void fp_divrem(const FpPoly& a, const FpPoly& b, uint64_t p, FpPoly& q, FpPoly& r) {
    if (b.empty()) throw std::invalid_argument("fp_divrem: division by zero");
    r = a;
    if (a.size() < b.size()) {
        q = {};
        return;
    }
    q.assign(a.size() - b.size() + 1, 0);
    const uint64_t lc_inv = inv_mod(b.back(), p);
    for (size_t i = q.size(); i-- > 0;) {
        if (r.size() < b.size() + i || r[b.size() - 1 + i] == 0) continue;
        const uint64_t f = mul_mod(r[b.size() - 1 + i], lc_inv, p);
        q[i] = f;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t sub = mul_mod(f, b[j], p);
            uint64_t& tgt = r[i + j];
            tgt = tgt >= sub ? tgt - sub : tgt + p - sub;
        }
    }
    fp_normalize(r);
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& b, uint64_t p) {
    FpPoly q, r;
    fp_divrem(a, b, p, q, r);
    return r;
}

FpPoly fp_make_monic(const FpPoly& a, uint64_t p) {
    if (a.empty() || a.back() == 1) return a;
    const uint64_t inv = inv_mod(a.back(), p);
    FpPoly out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = mul_mod(a[i], inv, p);
    return out;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, uint64_t p) {
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_make_monic(a, p);
}

FpPoly fp_derivative(const FpPoly& a, uint64_t p) {
    if (a.size() <= 1) return {};
    FpPoly d(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) d[i - 1] = mul_mod(a[i], i % p, p);
    fp_normalize(d);
    return d;
}

FpPoly fp_powmod(const FpPoly& base, uint64_t e, const FpPoly& mod, uint64_t p) {
    FpPoly r{1}, b = fp_mod(base, mod, p);
    while (e) {
        if (e & 1) r = fp_mod(fp_mul(r, b, p), mod, p);
        e >>= 1;
        if (e) b = fp_mod(fp_mul(b, b, p), mod, p);
    }
    return r;
}

FpPoly fp_powmod(const FpPoly& base, const mpz_class& e, const FpPoly& mod, uint64_t p) {
    if (e < 0) throw std::invalid_argument("fp_powmod: negative exponent");
    if (e == 0) return {1};
    FpPoly r{1}, b = fp_mod(base, mod, p);
    const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = fp_mod(fp_mul(r, r, p), mod, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = fp_mod(fp_mul(r, b, p), mod, p);
    }
    return r;
}

namespace {

/** f(t) = g(t^p) -> g; in F_p the coefficients carry over unchanged. */
FpPoly fp_pth_root(const FpPoly& f, uint64_t p) {
    FpPoly g(f.size() / p + 1, 0);
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        if (i % p != 0) throw std::logic_error("fp_pth_root: not a p-th power");
        g[i / p] = f[i];
    }
    fp_normalize(g);
    return g;
}

/** Squarefree decomposition in characteristic p (Yun with p-th root descent). */
std::vector<std::pair<FpPoly, unsigned>> fp_squarefree(const FpPoly& f, uint64_t p) {
    std::vector<std::pair<FpPoly, unsigned>> out;
    FpPoly fd = fp_derivative(f, p);
    if (fd.empty()) {
        for (auto& [g, e] : fp_squarefree(fp_pth_root(f, p), p))
            out.emplace_back(std::move(g), e * static_cast<unsigned>(p));
        return out;
    }
    FpPoly c = fp_gcd(f, fd, p);
    FpPoly w;
    {
        FpPoly q, r;
        fp_divrem(f, c, p, q, r);
        w = std::move(q);
    }
    unsigned i = 1;
    while (fp_deg(w) > 0) {
        FpPoly y = fp_gcd(w, c, p);
        FpPoly z, r;
        fp_divrem(w, y, p, z, r);
        if (fp_deg(z) > 0) out.emplace_back(fp_make_monic(z, p), i);
        FpPoly cq;
        fp_divrem(c, y, p, cq, r);
        c = std::move(cq);
        w = std::move(y);
        ++i;
    }
    if (fp_deg(c) > 0) {
        for (auto& [g, e] : fp_squarefree(fp_pth_root(c, p), p))
            out.emplace_back(std::move(g), e * static_cast<unsigned>(p));
    }
    return out;
}

/** Distinct-degree separation of a squarefree monic f. */
std::vector<std::pair<FpPoly, long>> fp_distinct_degree(const FpPoly& f, uint64_t p) {
    std::vector<std::pair<FpPoly, long>> out;
    FpPoly fstar = f;
    FpPoly h{0, 1};  // t
    for (long d = 1; 2 * d <= fp_deg(fstar); ++d) {
        h = fp_powmod(h, p, fstar, p);
        FpPoly hmx = fp_sub(h, FpPoly{0, 1}, p);
        FpPoly g = fp_gcd(hmx, fstar, p);
        if (fp_deg(g) > 0) {
            out.emplace_back(g, d);
            FpPoly q, r;
            fp_divrem(fstar, g, p, q, r);
            fstar = std::move(q);
            h = fp_mod(h, fstar, p);
        }
    }
    if (fp_deg(fstar) > 0) out.emplace_back(fstar, fp_deg(fstar));
    return out;
}

/** Cantor-Zassenhaus equal-degree splitting for odd p. */
void fp_equal_degree(const FpPoly& f, long d, uint64_t p, std::mt19937_64& rng,
                     std::vector<FpPoly>& out) {
    if (fp_deg(f) == d) {
        out.push_back(fp_make_monic(f, p));
        return;
    }
    mpz_class pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
    const mpz_class half = (pd - 1) / 2;
    std::uniform_int_distribution<uint64_t> dist(0, p - 1);
    while (true) {
        FpPoly rnd(static_cast<size_t>(fp_deg(f)), 0);
        for (auto& c : rnd) c = dist(rng);
        fp_normalize(rnd);
        if (rnd.empty()) continue;
        FpPoly g = fp_gcd(rnd, f, p);
        if (fp_deg(g) <= 0) {
            FpPoly pw = fp_powmod(rnd, half, f, p);
            pw = fp_sub(pw, FpPoly{1}, p);
            g = fp_gcd(pw, f, p);
        }
        if (fp_deg(g) > 0 && fp_deg(g) < fp_deg(f)) {
            FpPoly q, r;
            fp_divrem(f, g, p, q, r);
            fp_equal_degree(g, d, p, rng, out);
            fp_equal_degree(q, d, p, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<FpPoly, unsigned>> factor_poly_mod_p(const IntPolynomial& f,
                                                           const PrimeModulus& pm) {
    if (!f.is_monic()) throw std::invalid_argument("factor_poly_mod_p: f must be monic");
    if (f.degree() < 1) throw std::invalid_argument("factor_poly_mod_p: degree must be >= 1");
    const uint64_t p = pm.value;
    FpPoly fp = fp_from_int_poly(f, p);
    std::vector<std::pair<FpPoly, unsigned>> out;
    std::mt19937_64 rng(0x5eedULL ^ p);
    for (const auto& [sq, mult] : fp_squarefree(fp, p)) {
        for (const auto& [dd, d] : fp_distinct_degree(sq, p)) {
            std::vector<FpPoly> irr;
            fp_equal_degree(dd, d, p, rng, irr);
            for (auto& g : irr) out.emplace_back(std::move(g), mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Extension fields.
// ---------------------------------------------------------------------------

ExtField::ExtField(const PrimeModulus& p, FpPoly defining_poly)
    : p_(p.value), defining_(std::move(defining_poly)) {
    if (fp_deg(defining_) < 1)
        throw std::invalid_argument("ExtField: defining polynomial must have degree >= 1");
    if (defining_.back() != 1)
        throw std::invalid_argument("ExtField: defining polynomial must be monic");
}

mpz_class ExtField::group_order() const {
    mpz_class pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p_),
                  static_cast<unsigned long>(degree()));
    return pd - 1;
}

FpPoly ExtField::generator() const { return fp_mod(FpPoly{0, 1}, defining_, p_); }

FpPoly ExtField::mul(const FpPoly& a, const FpPoly& b) const {
    return fp_mod(fp_mul(a, b, p_), defining_, p_);
}

FpPoly ExtField::pow(const FpPoly& a, const mpz_class& e) const {
    return fp_powmod(a, e, defining_, p_);
}

std::optional<mpz_class> element_order(const ExtFieldElement& x, const Factorization& group_order) {
    if (x.coords.empty()) throw std::invalid_argument("element_order: zero element");
    if (!group_order.complete) return std::nullopt;
    const ExtField& F = *x.field;
    mpz_class e = group_order.n;
    if (!fp_is_one(F.pow(x.coords, e)))
        throw std::invalid_argument("element_order: group order is not a multiple of the order");
    for (const auto& [q, mult] : group_order.factors) {
        (void)mult;
        while (mpz_divisible_p(e.get_mpz_t(), q.get_mpz_t())) {
            mpz_class trial = e / q;
            if (!fp_is_one(F.pow(x.coords, trial))) break;
            e = trial;
        }
    }
    return e;
}

}  // namespace symsum
