/* Copyright (C) 2026 the symsum authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 */
#include "symsum/avoidance.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <thread>

namespace symsum {

namespace {

uint64_t scan_length_or_throw(const mpz_class& length) {
    if (!length.fits_ulong_p())
        throw std::runtime_error("avoidance scan: period too large to scan");
    return length.get_ui();
}

Recurrence perturbed_recurrence(const DegreeSet& d, const Perturbation& f) {
    Recurrence rec;
    rec.charpoly = full_charpoly(d.r());
    rec.start = f.var_count() + 1;
    const int deg = rec.charpoly.degree();
    rec.initial.reserve(static_cast<size_t>(deg));
    for (int n = 0; n < deg; ++n)
        rec.initial.push_back(perturbation_reduce(d, f, f.var_count() + 1 + n));
    return rec;
}

}  // namespace

AvoidanceResult avoids_recurrence(const Recurrence& rec, const PrimeModulus& p,
                                  const AvoidOptions& opts) {
    AvoidanceResult out;
    out.p = p.value;
    mpz_class length =
        opts.scan_length ? *opts.scan_length : pisano_period(rec, p, PeriodMethod::Auto, opts.period);
    out.period_scanned = length;
    const uint64_t n = scan_length_or_throw(length);
    ModSequence seq(rec, p.value);
    for (uint64_t i = 0; i < n; ++i) {
        if (seq.next() == 0) {
            out.avoids = false;
            out.first_zero_index = rec.start + static_cast<long long>(i);
            return out;
        }
    }
    out.avoids = true;
    return out;
}

AvoidanceResult avoids(const DegreeSet& d, const PrimeModulus& p, const AvoidOptions& opts) {
    return avoids_recurrence(make_recurrence(d, /*minimal=*/true), p, opts);
}

AvoidanceResult avoids(const DegreeSet& d, const Perturbation& f, const PrimeModulus& p,
                       const AvoidOptions& opts) {
    return avoids_recurrence(perturbed_recurrence(d, f), p, opts);
}

long long zeros_in_period(const DegreeSet& d, const PrimeModulus& p, const PeriodOptions& opts) {
    Recurrence rec = make_recurrence(d, /*minimal=*/true);
    const mpz_class pi = pisano_period(rec, p, PeriodMethod::Auto, opts);
    const uint64_t n = scan_length_or_throw(pi);
    ModSequence seq(rec, p.value);
    long long zeros = 0;
    for (uint64_t i = 0; i < n; ++i)
        if (seq.next() == 0) ++zeros;
    return zeros;
}

FindPrimeResult find_avoiding_prime(int k, uint64_t max_m, int jobs) {
    if (k < 3) throw std::invalid_argument("find_avoiding_prime: requires k >= 3");
    if (std::has_single_bit(static_cast<unsigned>(k)))
        throw std::invalid_argument(
            "find_avoiding_prime: k is a power of two (balanced at the trivial positions, "
            "no avoiding prime exists)");
    const DegreeSet d({k});
    const uint64_t step = uint64_t{1} << d.r();
    const Recurrence rec = make_recurrence(d, /*minimal=*/true);

    auto try_m = [&](uint64_t m) -> bool {
        const uint64_t cand = step * m + 1;
        if (cand >= (uint64_t{1} << 62) || !is_prime_u64(cand)) return false;
        // p = 1 mod 2^r: the period divides p - 1, so a (p-1)-term scan is
        // one full value period or more.
        AvoidOptions opts;
        opts.scan_length = mpz_class(static_cast<unsigned long>(cand - 1));
        return avoids_recurrence(rec, PrimeModulus(cand), opts).avoids;
    };

    FindPrimeResult out;
    if (jobs <= 1) {
        for (uint64_t m = 1; m <= max_m; ++m) {
            out.max_m_tested = m;
            if (try_m(m)) {
                out.found = true;
                out.prime = step * m + 1;
                return out;
            }
        }
        return out;
    }
    // Block-synchronous search keeps the result equal to the serial one:
    // evaluate a window of candidates in parallel, accept the smallest hit.
    const uint64_t block = static_cast<uint64_t>(jobs) * 4;
    for (uint64_t base = 1; base <= max_m; base += block) {
        const uint64_t end = std::min(base + block - 1, max_m);
        std::vector<uint8_t> hit(end - base + 1, 0);
        std::vector<std::thread> threads;
        for (int t = 0; t < jobs; ++t) {
            threads.emplace_back([&, t] {
                for (uint64_t m = base + static_cast<uint64_t>(t); m <= end;
                     m += static_cast<uint64_t>(jobs))
                    hit[m - base] = try_m(m) ? 1 : 0;
            });
        }
        for (auto& th : threads) th.join();
        out.max_m_tested = end;
        for (uint64_t m = base; m <= end; ++m) {
            if (hit[m - base]) {
                out.found = true;
                out.prime = step * m + 1;
                out.max_m_tested = m;
                return out;
            }
        }
    }
    return out;
}

namespace {

struct RClassInfo {
    uint64_t scan_length = 1;
    std::vector<uint64_t> coeffs;  // full-recurrence coefficients mod p
};

}  // namespace

std::vector<DegreeSet> scan_avoiders(int max_degree, const PrimeModulus& p, int jobs) {
    if (max_degree < 1 || max_degree > 20)
        throw std::invalid_argument("scan_avoiders: max_degree must be in [1, 20]");
    const uint64_t pv = p.value;
    int rmax = 1;
    while ((1 << rmax) <= max_degree) ++rmax;

    // One scan length per r-class: every candidate's Pisano period divides
    // the weak period of sigma_{2^{r-1}}, i.e. the lcm of the root orders of
    // Phi_{2^r}(t-1) over F_p.
    std::vector<RClassInfo> cls(static_cast<size_t>(rmax) + 1);
    for (int r = 2; r <= rmax; ++r) {
        auto star = weak_period_vince(cyclotomic_shifted(r), p);
        if (!star) throw std::runtime_error("scan_avoiders: shared period unavailable");
        cls[static_cast<size_t>(r)].scan_length = scan_length_or_throw(star->value);
        Recurrence full;
        full.charpoly = full_charpoly(r);
        for (const mpz_class& c : full.coefficients()) {
            mpz_class m = c % static_cast<unsigned long>(pv);
            if (m < 0) m += static_cast<unsigned long>(pv);
            cls[static_cast<size_t>(r)].coeffs.push_back(m.get_ui());
        }
    }
    cls[1].scan_length = 1;  // the {1} class: x_1 = 0 settles it

    // Pascal table mod p for the initial values, and per-weight degree masks
    // for the candidate-dependent signs.
    const int dmax = (1 << rmax) - 1;
    std::vector<std::vector<uint64_t>> binom(static_cast<size_t>(dmax) + 1);
    for (int n = 0; n <= dmax; ++n) {
        binom[static_cast<size_t>(n)].assign(static_cast<size_t>(n) + 1, 1);
        for (int j = 1; j < n; ++j)
            binom[static_cast<size_t>(n)][static_cast<size_t>(j)] =
                (binom[static_cast<size_t>(n - 1)][static_cast<size_t>(j - 1)] +
                 binom[static_cast<size_t>(n - 1)][static_cast<size_t>(j)]) % pv;
    }
    std::vector<uint32_t> contain(static_cast<size_t>(dmax) + 1, 0);
    for (int j = 0; j <= dmax; ++j)
        for (int k = 1; k <= max_degree; ++k)
            if ((j & k) == k) contain[static_cast<size_t>(j)] |= 1u << (k - 1);

    const uint32_t total = (1u << max_degree) - 1;
    std::vector<uint8_t> avoid_flags(total + 1, 0);

    auto run_candidate = [&](uint32_t cand) {
        const int ks = 32 - std::countl_zero(cand);  // top set bit index + 1 = max degree
        int r = 1;
        while ((1 << r) <= ks) ++r;
        const RClassInfo& info = cls[static_cast<size_t>(r)];
        const int deg = (1 << r) - 1;
        const uint64_t length = info.scan_length;
        // Initial values x_1..x_deg straight from the binomial sum mod p.
        uint64_t window[31];
        for (int n = 1; n <= deg; ++n) {
            unsigned __int128 acc = 0;
            for (int j = 0; j <= n; ++j) {
                const uint64_t c = binom[static_cast<size_t>(n)][static_cast<size_t>(j)];
                acc += (std::popcount(contain[static_cast<size_t>(j)] & cand) & 1) ? pv - c : c;
            }
            window[n - 1] = static_cast<uint64_t>(acc % pv);
        }
        for (uint64_t i = 0; i < std::min<uint64_t>(length, static_cast<uint64_t>(deg)); ++i)
            if (window[i] == 0) return false;
        size_t pos = 0;
        for (uint64_t i = deg; i < length; ++i) {
            unsigned __int128 acc = 0;
            for (int t = 0; t < deg; ++t)
                acc += static_cast<unsigned __int128>(info.coeffs[static_cast<size_t>(t)]) *
                       window[(pos + static_cast<size_t>(deg - 1 - t)) % static_cast<size_t>(deg)];
            const uint64_t v = static_cast<uint64_t>(acc % pv);
            if (v == 0) return false;
            window[pos] = v;
            pos = (pos + 1) % static_cast<size_t>(deg);
        }
        return true;
    };

    if (jobs <= 1) {
        for (uint32_t cand = 1; cand <= total; ++cand) avoid_flags[cand] = run_candidate(cand);
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < jobs; ++t) {
            threads.emplace_back([&, t] {
                for (uint32_t cand = 1 + static_cast<uint32_t>(t); cand <= total;
                     cand += static_cast<uint32_t>(jobs))
                    avoid_flags[cand] = run_candidate(cand);
            });
        }
        for (auto& th : threads) th.join();
    }

    std::vector<DegreeSet> out;
    for (uint32_t cand = 1; cand <= total; ++cand) {
        if (!avoid_flags[cand]) continue;
        std::vector<int> degrees;
        for (int k = 1; k <= max_degree; ++k)
            if (cand & (1u << (k - 1))) degrees.push_back(k);
        out.emplace_back(std::move(degrees));
    }
    std::sort(out.begin(), out.end());
    return out;
}

ProgressionReport prime_divisor_progressions(const DegreeSet& d) {
    ProgressionReport rep;
    rep.r = d.r();
    for (int j = 0; j < (1 << rep.r); ++j) {
        if (parity_exponent(static_cast<unsigned long long>(j), d)) {
            rep.all_residues.push_back(j);
            if (j % 2 == 1) rep.odd_residues.push_back(j);
        }
    }
    rep.density = mpq_class(static_cast<long>(rep.odd_residues.size()), 1L << (rep.r - 1));
    rep.density.canonicalize();
    if (rep.odd_residues.empty()) {
        // Only unions of adjacent pairs {2l, 2l+1} have no odd residues.
        const auto& deg = d.degrees();
        bool pairs = true;
        for (size_t i = 0; i < deg.size(); i += 2) {
            if (deg[i] % 2 != 0 || i + 1 >= deg.size() || deg[i + 1] != deg[i] + 1) {
                pairs = false;
                break;
            }
        }
        if (!pairs)
            throw std::logic_error(
                "prime_divisor_progressions: empty residues on a non-pair-union degree set");
        rep.empty_reason = "union of adjacent-pair blocks [2l,2l+1]";
    }
    return rep;
}

Deg2Report analyze_deg2_perturbation(const Perturbation& f) {
    Deg2Report rep;
    rep.j = f.var_count();
    const DegreeSet d2({2});
    rep.d_j1 = perturbation_reduce(d2, f, rep.j + 1);
    rep.d_j2 = perturbation_reduce(d2, f, rep.j + 2);
    const mpz_class& d1 = rep.d_j1;
    const mpz_class& d2v = rep.d_j2;
    if (d1 == 0 && d2v == 0) {
        rep.all_zero = true;
        rep.balanced_possible = true;
        rep.zero_start = rep.j + 1;
        return rep;
    }
    if (d1 == 0) {
        rep.balanced_possible = true;  // ratio is inf
        rep.zero_start = rep.j + 1;
        return rep;
    }
    if (d2v == 0) {
        rep.balanced_possible = true;  // ratio - 1 = -1
        rep.zero_start = rep.j + 2;
        return rep;
    }
    if (d1 == d2v) {
        rep.balanced_possible = true;  // ratio - 1 = 0
        rep.zero_start = rep.j + 3;
        return rep;
    }
    if (d2v == 2 * d1) {
        rep.balanced_possible = true;  // ratio - 1 = +1
        rep.zero_start = rep.j + 4;
        return rep;
    }
    rep.balanced_possible = false;
    // d(n+4) = -4 d(n) exactly, so the odd prime divisors of the whole
    // sequence are those of one representative per residue class of n mod 4.
    rep.four_numbers = {2 * d1 - d2v, d1, d2v, d1 - d2v};
    const long bases[4] = {rep.j + 4, rep.j + 1, rep.j + 2, rep.j + 3};
    std::vector<mpz_class> primes{mpz_class(2)};
    for (size_t i = 0; i < rep.four_numbers.size(); ++i) {
        mpz_class v = abs(rep.four_numbers[i]);
        if (v <= 1) continue;
        Factorization fact = factor_integer(v);
        for (const auto& [q, e] : fact.factors) {
            (void)e;
            if (q == 2) continue;
            rep.prime_classes.emplace_back(q, bases[i]);
            primes.push_back(q);
        }
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    rep.prime_set = std::move(primes);
    std::sort(rep.prime_classes.begin(), rep.prime_classes.end());
    return rep;
}

bool deg3_avoidance_criterion(const PrimeModulus& p) {
    return ord_mod(4 % p.value, p.value) % 4 == 2;
}

}  // namespace symsum
