/* Copyright (C) 2026 the symsum authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 */
#include "symsum/modular_periods.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace symsum {

PeriodMethod period_method_from_string(const std::string& name) {
    if (name == "auto") return PeriodMethod::Auto;
    if (name == "scan") return PeriodMethod::Scan;
    if (name == "matrix") return PeriodMethod::Matrix;
    if (name == "vince") return PeriodMethod::Vince;
    throw std::invalid_argument("unknown period method: " + name);
}

std::string period_method_name(PeriodMethod m) {
    switch (m) {
        case PeriodMethod::Auto: return "auto";
        case PeriodMethod::Scan: return "scan";
        case PeriodMethod::Matrix: return "matrix";
        case PeriodMethod::Vince: return "vince";
    }
    return "?";
}

namespace {

// ----- small dense matrices over F_p -----

struct FpMatrix {
    size_t n = 0;
    uint64_t p = 0;
    std::vector<uint64_t> a;

    uint64_t& at(size_t i, size_t j) { return a[i * n + j]; }
    uint64_t at(size_t i, size_t j) const { return a[i * n + j]; }

    static FpMatrix identity(size_t n, uint64_t p) {
        FpMatrix m{n, p, std::vector<uint64_t>(n * n, 0)};
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    FpMatrix mul(const FpMatrix& o) const {
        FpMatrix c{n, p, std::vector<uint64_t>(n * n, 0)};
        for (size_t i = 0; i < n; ++i) {
            for (size_t k = 0; k < n; ++k) {
                const uint64_t v = at(i, k);
                if (v == 0) continue;
                for (size_t j = 0; j < n; ++j)
                    c.at(i, j) = (c.at(i, j) +
                                  static_cast<unsigned __int128>(v) * o.at(k, j)) % p;
            }
        }
        return c;
    }

    FpMatrix pow(const mpz_class& e) const {
        FpMatrix r = identity(n, p);
        if (e == 0) return r;
        FpMatrix b = *this;
        const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (size_t i = bits; i-- > 0;) {
            r = r.mul(r);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = r.mul(b);
        }
        return r;
    }

    bool is_identity() const {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (at(i, j) != (i == j ? 1u : 0u)) return false;
        return true;
    }

    /// Scalar multiple of I -> the scalar; nullopt otherwise.
    std::optional<uint64_t> as_scalar() const {
        const uint64_t s = at(0, 0);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (at(i, j) != (i == j ? s : 0u)) return std::nullopt;
        return s;
    }
};

FpMatrix companion_matrix(const Recurrence& rec, uint64_t p) {
    const size_t deg = static_cast<size_t>(rec.order());
    FpMatrix m{deg, p, std::vector<uint64_t>(deg * deg, 0)};
    for (size_t i = 0; i + 1 < deg; ++i) m.at(i, i + 1) = 1;
    const std::vector<mpz_class> a = rec.coefficients();
    for (size_t i = 0; i < deg; ++i) {
        mpz_class c = a[deg - 1 - i] % static_cast<unsigned long>(p);
        if (c < 0) c += static_cast<unsigned long>(p);
        m.at(deg - 1, i) = c.get_ui();
    }
    return m;
}

std::vector<uint64_t> initial_state_mod(const Recurrence& rec, uint64_t p) {
    std::vector<uint64_t> out;
    out.reserve(rec.initial.size());
    for (const mpz_class& v : rec.initial) {
        mpz_class r = v % static_cast<unsigned long>(p);
        if (r < 0) r += static_cast<unsigned long>(p);
        out.push_back(r.get_ui());
    }
    return out;
}

bool all_zero(const std::vector<uint64_t>& v) {
    return std::all_of(v.begin(), v.end(), [](uint64_t x) { return x == 0; });
}

/** Multiply by t modulo the monic chi (in place), O(deg). */
void shift_mod(FpPoly& q, const FpPoly& chi, uint64_t p) {
    q.insert(q.begin(), 0);
    if (q.size() >= chi.size()) {
        const uint64_t lead = q.back();
        if (lead != 0) {
            for (size_t j = 0; j + 1 < chi.size(); ++j) {
                uint64_t sub = mul_mod(lead, chi[j], p);
                uint64_t& tgt = q[q.size() - chi.size() + j];
                tgt = tgt >= sub ? tgt - sub : tgt + p - sub;
            }
        }
        q.pop_back();
    }
    fp_normalize(q);
}

uint64_t dot_state(const FpPoly& q, const std::vector<uint64_t>& init, uint64_t p) {
    unsigned __int128 acc = 0;
    for (size_t j = 0; j < q.size(); ++j) {
        acc += static_cast<unsigned __int128>(q[j]) * init[j];
        if ((j & 7u) == 7u) acc %= p;
    }
    return static_cast<uint64_t>(acc % p);
}

/** X_{start+e} mod p from t^e mod chi: entries x_{start+e+i}, i < D. */
std::vector<uint64_t> state_at_offset(const FpPoly& chi, const std::vector<uint64_t>& init,
                                      const mpz_class& e, uint64_t p) {
    FpPoly q = fp_powmod(FpPoly{0, 1}, e, chi, p);
    std::vector<uint64_t> state(init.size());
    for (size_t i = 0; i < init.size(); ++i) {
        state[i] = dot_state(q, init, p);
        shift_mod(q, chi, p);
    }
    return state;
}

unsigned valuation(mpz_class v, const mpz_class& q) {
    unsigned e = 0;
    while (mpz_divisible_p(v.get_mpz_t(), q.get_mpz_t())) {
        v /= q;
        ++e;
    }
    return e;
}

FactoredValue refactor(const mpz_class& v,
                       const std::vector<std::pair<mpz_class, unsigned>>& base) {
    FactoredValue out;
    out.value = v;
    mpz_class rest = v;
    for (const auto& [q, e] : base) {
        (void)e;
        unsigned val = valuation(v, q);
        if (val > 0) {
            out.factors.emplace_back(q, val);
            for (unsigned i = 0; i < val; ++i) rest /= q;
        }
    }
    if (rest != 1) throw std::logic_error("refactor: value has a prime outside the base");
    return out;
}

mpz_class lcm_merge(std::vector<std::pair<mpz_class, unsigned>>& acc,
                    const std::vector<std::pair<mpz_class, unsigned>>& add) {
    for (const auto& [q, e] : add) {
        auto it = std::find_if(acc.begin(), acc.end(),
                               [&](const auto& pr) { return pr.first == q; });
        if (it == acc.end())
            acc.emplace_back(q, e);
        else
            it->second = std::max(it->second, e);
    }
    mpz_class v = 1;
    for (const auto& [q, e] : acc)
        for (unsigned i = 0; i < e; ++i) v *= q;
    return v;
}

int r_from_degree(int deg) {
    int r = 0;
    while ((1 << r) <= deg) ++r;
    return r;  // floor(log2 deg) + 1
}

}  // namespace

std::optional<FactoredValue> weak_period_vince(const IntPolynomial& chi, const PrimeModulus& p,
                                               const PeriodOptions& opts) {
    if (chi.constant() % static_cast<unsigned long>(p.value) == 0)
        throw std::invalid_argument("weak_period_vince: p divides the constant term");
    FactoredValue out;
    std::vector<std::pair<mpz_class, unsigned>> acc;
    const auto factors = factor_poly_mod_p(chi, p);
    for (const auto& [f, mult] : factors) {
        auto field = std::make_shared<ExtField>(p, f);
        Factorization group = factor_integer(field->group_order(), opts.rho_budget);
        if (!group.complete) return std::nullopt;
        ExtFieldElement root{field, field->generator()};
        auto ord = element_order(root, group);
        if (!ord) return std::nullopt;
        FactoredValue of = refactor(*ord, group.factors);
        lcm_merge(acc, of.factors);
        if (mult > 1) {
            // p^{ceil log_p(mult)} covers the nilpotent part.
            unsigned s = 0;
            mpz_class pw = 1;
            while (pw < mult) {
                pw *= static_cast<unsigned long>(p.value);
                ++s;
            }
            lcm_merge(acc, {{mpz_class(static_cast<unsigned long>(p.value)), s}});
        }
    }
    std::sort(acc.begin(), acc.end());
    out.factors = std::move(acc);
    out.value = 1;
    for (const auto& [q, e] : out.factors)
        for (unsigned i = 0; i < e; ++i) out.value *= q;
    return out;
}

std::optional<FactoredValue> weak_period_matrix(const Recurrence& rec, const PrimeModulus& p,
                                                const PeriodOptions& opts) {
    const uint64_t pv = p.value;
    FpMatrix A = companion_matrix(rec, pv);
    const int r = r_from_degree(rec.order());
    mpz_class bound = period_bound_for_order(r, p);
    if (!A.pow(bound).is_identity()) {
        // Not a product from the cyclotomic factor lattice: fall back to the
        // generic multiple built from the mod-p factor degrees.
        const auto factors = factor_poly_mod_p(rec.charpoly, p);
        std::vector<std::pair<mpz_class, unsigned>> acc;
        mpz_class m = 1;
        unsigned max_mult = 1;
        for (const auto& [f, mult] : factors) {
            mpz_class pd;
            mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(pv),
                          static_cast<unsigned long>(fp_deg(f)));
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), mpz_class(pd - 1).get_mpz_t());
            m = m / g * (pd - 1);
            max_mult = std::max(max_mult, mult);
        }
        mpz_class pw = 1;
        while (pw < max_mult) pw *= static_cast<unsigned long>(pv);
        bound = m * pw;
        if (!A.pow(bound).is_identity())
            throw std::logic_error("weak_period_matrix: generic bound failed");
    }
    Factorization fb = factor_integer(bound, opts.rho_budget);
    if (!fb.complete) return std::nullopt;
    for (const mpz_class& e : sorted_divisors(fb.factors)) {
        if (A.pow(e).is_identity()) return refactor(e, fb.factors);
    }
    throw std::logic_error("weak_period_matrix: no divisor worked");
}

std::optional<uint64_t> pisano_scan(const Recurrence& rec, const PrimeModulus& p, uint64_t cap) {
    const size_t deg = static_cast<size_t>(rec.order());
    const std::vector<uint64_t> init = initial_state_mod(rec, p.value);
    ModSequence seq(rec, p.value);
    std::vector<uint64_t> ring(deg);
    for (size_t i = 0; i < deg; ++i) ring[i] = seq.next();
    size_t pos = 0;  // ring[pos] is the oldest entry
    for (uint64_t e = 1; e <= cap; ++e) {
        ring[pos] = seq.next();
        pos = (pos + 1) % deg;
        bool match = true;
        for (size_t i = 0; i < deg && match; ++i)
            match = ring[(pos + i) % deg] == init[i];
        if (match) return e;
    }
    return std::nullopt;
}

FactoredValue least_state_period(const Recurrence& rec, const PrimeModulus& p,
                                 const FactoredValue& multiple) {
    const uint64_t pv = p.value;
    const FpPoly chi = fp_from_int_poly(rec.charpoly, pv);
    const std::vector<uint64_t> init = initial_state_mod(rec, pv);
    for (const mpz_class& e : sorted_divisors(multiple.factors)) {
        if (state_at_offset(chi, init, e, pv) == init) return refactor(e, multiple.factors);
    }
    throw std::logic_error("least_state_period: the given multiple is not a period");
}

namespace {

/** pi* with provenance; respects the requested method. */
std::optional<std::pair<FactoredValue, std::string>> weak_period_with_method(
    const Recurrence& rec, const PrimeModulus& p, PeriodMethod method,
    const PeriodOptions& opts) {
    if (method == PeriodMethod::Vince || method == PeriodMethod::Auto) {
        auto v = weak_period_vince(rec.charpoly, p, opts);
        if (v) return std::make_pair(*v, std::string("vince"));
        if (method == PeriodMethod::Vince) return std::nullopt;
    }
    if (method == PeriodMethod::Matrix || method == PeriodMethod::Auto) {
        auto v = weak_period_matrix(rec, p, opts);
        if (v) return std::make_pair(*v, std::string("matrix"));
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

mpz_class pisano_period(const Recurrence& rec, const PrimeModulus& p, PeriodMethod method,
                        const PeriodOptions& opts) {
    if (method == PeriodMethod::Scan) {
        auto e = pisano_scan(rec, p, opts.scan_cap);
        if (!e) throw std::runtime_error("pisano_period: no repeat within the scan cap");
        return mpz_class(static_cast<unsigned long>(*e));
    }
    auto star = weak_period_with_method(rec, p, method, opts);
    if (star) return least_state_period(rec, p, star->first).value;
    if (method == PeriodMethod::Auto) {
        auto e = pisano_scan(rec, p, opts.scan_cap);
        if (e) return mpz_class(static_cast<unsigned long>(*e));
        throw std::runtime_error(
            "pisano_period: pi* unavailable (factorization budget) and scan cap exceeded");
    }
    throw std::runtime_error("pisano_period: pi* unavailable (factorization budget)");
}

RestrictedPeriod restricted_period(const Recurrence& rec, const PrimeModulus& p,
                                   const PeriodOptions& opts) {
    const uint64_t pv = p.value;
    const std::vector<uint64_t> init = initial_state_mod(rec, pv);
    RestrictedPeriod out;
    if (all_zero(init)) {
        out.degenerate = true;
        out.alpha = 1;
        return out;
    }
    auto star = weak_period_with_method(rec, p, PeriodMethod::Auto, opts);
    if (!star) throw std::runtime_error("restricted_period: pi* unavailable");
    FactoredValue pi = least_state_period(rec, p, star->first);
    const FpPoly chi = fp_from_int_poly(rec.charpoly, pv);
    size_t pivot = 0;
    while (init[pivot] == 0) ++pivot;
    const uint64_t pivot_inv = inv_mod(init[pivot], pv);
    for (const mpz_class& e : sorted_divisors(pi.factors)) {
        std::vector<uint64_t> state = state_at_offset(chi, init, e, pv);
        const uint64_t s = mul_mod(state[pivot], pivot_inv, pv);
        if (s == 0) continue;
        bool proportional = true;
        for (size_t i = 0; i < init.size() && proportional; ++i)
            proportional = state[i] == mul_mod(s, init[i], pv);
        if (proportional) {
            out.alpha = e;
            out.multiplier = s;
            out.beta = mpz_class(static_cast<unsigned long>(ord_mod(s, pv)));
            return out;
        }
    }
    throw std::logic_error("restricted_period: pi itself did not qualify");
}

std::optional<WeakRestrictedPeriod> weak_restricted_period(const Recurrence& rec,
                                                           const PrimeModulus& p,
                                                           const PeriodOptions& opts) {
    auto star = weak_period_with_method(rec, p, PeriodMethod::Auto, opts);
    if (!star) return std::nullopt;
    FpMatrix A = companion_matrix(rec, p.value);
    for (const mpz_class& e : sorted_divisors(star->first.factors)) {
        auto s = A.pow(e).as_scalar();
        if (s && *s != 0) {
            WeakRestrictedPeriod out;
            out.alpha_star = e;
            out.multiplier_star = *s;
            out.beta_star = mpz_class(static_cast<unsigned long>(ord_mod(*s, p.value)));
            return out;
        }
    }
    throw std::logic_error("weak_restricted_period: pi* itself did not qualify");
}

namespace {

Recurrence augmented_recurrence(const Recurrence& rec) {
    const int deg = rec.order();
    if (deg < 2 || !std::has_single_bit(static_cast<unsigned>(deg)))
        throw std::invalid_argument("local_period: augmented form needs a power-of-two order");
    const int l = std::countr_zero(static_cast<unsigned>(deg));
    if (!(rec.charpoly == cyclotomic_shifted(l + 1)))
        throw std::invalid_argument(
            "local_period: augmented form needs the elementary power-of-two recurrence");
    Recurrence aug;
    aug.charpoly = rec.charpoly;
    aug.start = 0;
    aug.initial.resize(static_cast<size_t>(deg));
    aug.initial[0] = 0;
    for (int j = 1; j < deg; ++j) aug.initial[static_cast<size_t>(j)] = mpz_class(1) << (j - 1);
    return aug;
}

}  // namespace

mpz_class local_period(const Recurrence& rec, const PrimeModulus& p, long i, bool augmented,
                       const PeriodOptions& opts) {
    const Recurrence base = augmented ? augmented_recurrence(rec) : rec;
    if (i < base.start) throw std::invalid_argument("local_period: position before sequence start");
    auto star = weak_period_with_method(base, p, PeriodMethod::Auto, opts);
    if (!star) throw std::runtime_error("local_period: pi* unavailable");
    FactoredValue pi = least_state_period(base, p, star->first);
    if (!pi.value.fits_ulong_p()) throw std::runtime_error("local_period: period too large to scan");
    const uint64_t piv = pi.value.get_ui();
    const uint64_t offset = static_cast<uint64_t>(i - base.start);
    if (offset + piv > opts.scan_cap) throw std::runtime_error("local_period: scan cap exceeded");
    ModSequence seq(base, p.value);
    std::vector<uint64_t> vals(offset + piv + 1);
    for (auto& v : vals) v = seq.next();
    const uint64_t xi = vals[offset];
    for (const mpz_class& e : sorted_divisors(pi.factors)) {
        const uint64_t ev = e.get_ui();
        bool ok = true;
        for (uint64_t k = ev; k < piv && ok; k += ev) ok = vals[offset + k] == xi;
        if (ok) return e;
    }
    throw std::logic_error("local_period: pi itself did not qualify");
}

mpz_class period_bound_for_order(int r, const PrimeModulus& p) {
    if (r < 1) throw std::invalid_argument("period_bound: r must be >= 1");
    const uint64_t mod = uint64_t{1} << r;
    const uint64_t o = ord_mod(p.value % mod, mod);
    mpz_class b;
    mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(p.value),
                  static_cast<unsigned long>(o));
    return b - 1;
}

mpz_class period_bound(const DegreeSet& d, const PrimeModulus& p) {
    return period_bound_for_order(d.r(), p);
}

std::string period_bound_rule(const DegreeSet& d, const PrimeModulus& p) {
    const uint64_t mod = uint64_t{1} << d.r();
    const uint64_t o = ord_mod(p.value % mod, mod);
    if (o == 1) return "p-1";
    if (o == 2) return "p^2-1";
    return "p^ord-1";
}

PeriodReport period_report(const Recurrence& rec, const PrimeModulus& p, const DegreeSet* d,
                           const PeriodReportOptions& opts) {
    PeriodReport rep;
    rep.p = p.value;
    const int r = d ? d->r() : r_from_degree(rec.order());
    rep.bound = period_bound_for_order(r, p);
    rep.methods["bound"] = d ? period_bound_rule(*d, p) : "p^ord-1";

    if (opts.method == PeriodMethod::Scan) {
        auto e = pisano_scan(rec, p, opts.period.scan_cap);
        if (!e) throw std::runtime_error("period_report: no repeat within the scan cap");
        rep.pi = static_cast<unsigned long>(*e);
        rep.methods["pi"] = "scan";
        // The order of A, by sequential multiplication under the same cap.
        FpMatrix A = companion_matrix(rec, p.value);
        FpMatrix acc = A;
        uint64_t ord = 1;
        while (!acc.is_identity()) {
            acc = acc.mul(A);
            if (++ord > opts.period.scan_cap)
                throw std::runtime_error("period_report: matrix order scan cap exceeded");
        }
        rep.pi_star = static_cast<unsigned long>(ord);
        rep.methods["pi_star"] = "scan";
    } else {
        auto star = weak_period_with_method(rec, p, opts.method, opts.period);
        if (!star) throw std::runtime_error("period_report: pi* unavailable (budget)");
        rep.pi_star = star->first.value;
        rep.methods["pi_star"] = star->second;
        rep.pi = least_state_period(rec, p, star->first).value;
        rep.methods["pi"] = "divisors-of-pi*";
    }

    RestrictedPeriod rp = restricted_period(rec, p, opts.period);
    rep.degenerate = rp.degenerate;
    if (rp.degenerate) {
        rep.alpha = rep.pi;
        rep.multiplier = 1;
        rep.beta = 1;
        rep.methods["alpha"] = "degenerate";
    } else {
        rep.alpha = rp.alpha;
        rep.multiplier = rp.multiplier;
        rep.beta = rp.beta;
        rep.methods["alpha"] = "divisors-of-pi";
    }
    if (opts.with_weak_restricted) {
        auto wr = weak_restricted_period(rec, p, opts.period);
        if (wr) {
            rep.alpha_star = wr->alpha_star;
            rep.beta_star = wr->beta_star;
        }
    }
    return rep;
}

RelationVerdict check_relations(const std::vector<std::pair<DegreeSet, PeriodReport>>& reports) {
    RelationVerdict verdict;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        verdict.checks.push_back({name, pass, detail});
        verdict.all_pass = verdict.all_pass && pass;
    };
    if (reports.empty()) return verdict;
    const uint64_t p = reports.front().second.p;
    for (const auto& [d, rep] : reports) {
        const std::string tag = d.to_string();
        add("same-p " + tag, rep.p == p, "");
        if (!rep.degenerate)
            add("pi=alpha*beta " + tag, rep.pi == rep.alpha * rep.beta, "");
        add("pi|pi* " + tag, mpz_divisible_p(rep.pi_star.get_mpz_t(), rep.pi.get_mpz_t()) != 0, "");
        add("pi*|bound " + tag,
            mpz_divisible_p(rep.bound.get_mpz_t(), rep.pi_star.get_mpz_t()) != 0, "");
        if (d.max_degree() >= 2) {
            mpz_class two_r = mpz_class(1) << d.r();
            add("2^r|pi* " + tag,
                mpz_divisible_p(rep.pi_star.get_mpz_t(), two_r.get_mpz_t()) != 0,
                "r=" + std::to_string(d.r()));
        }
        if (rep.alpha_star) {
            add("alpha|alpha* " + tag,
                mpz_divisible_p(rep.alpha_star->get_mpz_t(), rep.alpha.get_mpz_t()) != 0, "");
        }
        if (rep.beta_star) {
            add("beta*|beta " + tag,
                mpz_divisible_p(rep.beta.get_mpz_t(), rep.beta_star->get_mpz_t()) != 0, "");
        }
    }
    // Within one r-class all weak periods agree.
    for (size_t i = 0; i < reports.size(); ++i) {
        for (size_t j = i + 1; j < reports.size(); ++j) {
            const auto& [di, ri] = reports[i];
            const auto& [dj, rj] = reports[j];
            if (di.max_degree() >= 2 && dj.max_degree() >= 2 && di.r() == dj.r())
                add("pi*-equal-in-r-class " + di.to_string() + "," + dj.to_string(),
                    ri.pi_star == rj.pi_star, "");
        }
    }
    // Elementary degrees: divisibility chain.
    for (size_t i = 0; i < reports.size(); ++i) {
        for (size_t j = 0; j < reports.size(); ++j) {
            const auto& [di, ri] = reports[i];
            const auto& [dj, rj] = reports[j];
            if (di.size() == 1 && dj.size() == 1 && di.max_degree() >= 2 &&
                di.max_degree() < dj.max_degree())
                add("pi*-chain " + di.to_string() + "|" + dj.to_string(),
                    mpz_divisible_p(rj.pi_star.get_mpz_t(), ri.pi_star.get_mpz_t()) != 0, "");
        }
    }
    return verdict;
}

}  // namespace symsum
