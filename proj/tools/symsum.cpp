/* Copyright (C) 2026 the symsum authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 */
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "symsum/avoidance.hpp"
#include "symsum/modular_periods.hpp"
#include "symsum/recurrences.hpp"
#include "symsum/symfun.hpp"

using json = nlohmann::ordered_json;
using namespace symsum;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitDisagreement = 3;

std::vector<int> parse_degree_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("empty degree in list");
        out.push_back(std::stoi(tok));
    }
    if (out.empty()) throw std::invalid_argument("empty degree list");
    return out;
}

json mpz_json(const mpz_class& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

json mpq_json(const mpq_class& v) {
    json j;
    j["rational"] = v.get_num().get_str() + "/" + v.get_den().get_str();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", mpq_get_d(v.get_mpq_t()));
    j["decimal"] = std::string(buf);
    return j;
}

std::string mpq_string(const mpq_class& v) {
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

int default_jobs() {
    if (const char* env = std::getenv("SYMSUM_JOBS")) {
        int j = std::atoi(env);
        if (j >= 1) return j;
    }
    return 1;
}

json period_report_json(const PeriodReport& rep) {
    json j;
    j["p"] = rep.p;
    j["pi"] = mpz_json(rep.pi);
    j["pi_star"] = mpz_json(rep.pi_star);
    j["alpha"] = mpz_json(rep.alpha);
    j["multiplier"] = rep.multiplier;
    j["beta"] = mpz_json(rep.beta);
    j["bound"] = mpz_json(rep.bound);
    if (rep.degenerate) j["degenerate"] = true;
    if (rep.alpha_star) j["alpha_star"] = mpz_json(*rep.alpha_star);
    if (rep.beta_star) j["beta_star"] = mpz_json(*rep.beta_star);
    j["methods"] = rep.methods;
    return j;
}

json avoidance_json(const DegreeSet* d, const AvoidanceResult& res) {
    json j;
    if (d) j["degrees"] = d->degrees();
    j["p"] = res.p;
    j["avoids"] = res.avoids;
    if (res.first_zero_index)
        j["first_zero"] = *res.first_zero_index;
    else
        j["first_zero"] = nullptr;
    j["period"] = mpz_json(res.period_scanned);
    return j;
}

struct CommonArgs {
    std::string degrees;
    uint64_t prime = 0;
    std::string perturb;
    int j = 0;
    std::string format = "text";
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "symsum: exponential sums of symmetric Boolean functions, their\n"
        "linear recurrences, periods modulo odd primes, and avoidance scans"};
    app.require_subcommand(1);
    int exit_code = 0;

    // ---- sum ----
    CommonArgs sum_args;
    auto* sum = app.add_subcommand("sum", "Exact exponential sum S(sigma_{n,[k...]}) or a perturbation");
    sum->add_option("--degrees", sum_args.degrees, "comma-separated degree list, e.g. 2,3,5")->required();
    int sum_n = 0;
    sum->add_option("--n", sum_n, "number of variables")->required();
    sum->add_option("--perturb", sum_args.perturb, "ANF of F on the first j variables, e.g. \"1,2,3;4,5,6\"");
    sum->add_option("--j", sum_args.j, "variable count of the perturbation");
    bool sum_oracle = false;
    sum->add_flag("--oracle", sum_oracle, "use the 2^n truth-table enumeration (n <= 24)");
    sum->add_option("--format", sum_args.format, "text|json");
    sum->callback([&] {
        DegreeSet d(parse_degree_list(sum_args.degrees));
        mpz_class value;
        if (!sum_args.perturb.empty()) {
            if (sum_args.j < 1) throw CLI::ValidationError("--perturb requires --j");
            Perturbation f = Perturbation::parse_anf(sum_args.perturb, sum_args.j);
            value = sum_oracle ? mpz_class(static_cast<long>(exp_sum_truthtable(sum_n, d, &f)))
                               : perturbation_reduce(d, f, sum_n);
        } else {
            value = sum_oracle ? mpz_class(static_cast<long>(exp_sum_truthtable(sum_n, d)))
                               : exp_sum_exact(sum_n, d).value;
        }
        if (sum_args.format == "json") {
            json j{{"degrees", d.degrees()}, {"n", sum_n}, {"value", mpz_json(value)}};
            if (!sum_args.perturb.empty()) j["perturb"] = sum_args.perturb;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << value.get_str() << "\n";
        }
    });

    // ---- asym ----
    CommonArgs asym_args;
    auto* asym = app.add_subcommand("asym", "Asymptotic constant c0 = lim S/2^n as an exact rational");
    asym->add_option("--degrees", asym_args.degrees)->required();
    asym->add_option("--format", asym_args.format, "text|json");
    asym->callback([&] {
        DegreeSet d(parse_degree_list(asym_args.degrees));
        mpq_class c0 = asymptotic_constant(d);
        if (asym_args.format == "json")
            std::cout << json{{"degrees", d.degrees()}, {"c0", mpq_json(c0)}}.dump() << "\n";
        else
            std::cout << mpq_string(c0) << "\n";
    });

    // ---- rec ----
    CommonArgs rec_args;
    bool rec_full = false;
    long rec_count = 0;
    uint64_t rec_mod = 0;
    auto* recc = app.add_subcommand("rec", "Characteristic polynomial, recurrence and terms of a sequence");
    recc->add_option("--degrees", rec_args.degrees)->required();
    recc->add_flag("--full", rec_full, "use the full 2^r-1 recurrence instead of the minimal one");
    recc->add_option("--count", rec_count, "emit this many terms");
    recc->add_option("--mod", rec_mod, "reduce emitted terms modulo this integer");
    recc->add_option("--format", rec_args.format, "text|json");
    recc->callback([&] {
        DegreeSet d(parse_degree_list(rec_args.degrees));
        Recurrence rec = make_recurrence(d, !rec_full);
        json j;
        j["degrees"] = d.degrees();
        j["charpoly"] = poly_to_string(rec.charpoly);
        json coeffs = json::array();
        for (const auto& c : rec.charpoly.coeffs) coeffs.push_back(mpz_json(c));
        j["charpoly_coeffs"] = coeffs;  // constant term first
        json init = json::array();
        for (const auto& v : rec.initial) init.push_back(mpz_json(v));
        j["initial"] = init;
        j["start"] = rec.start;
        if (rec_count > 0) {
            json terms = json::array();
            if (rec_mod >= 2)
                for (uint64_t v : generate_mod(rec, rec_mod, rec_count)) terms.push_back(v);
            else
                for (const auto& v : generate_exact(rec, rec_count)) terms.push_back(mpz_json(v));
            j["terms"] = terms;
        }
        if (rec_args.format == "json") {
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "charpoly: " << j["charpoly"].get<std::string>() << "\n";
            std::cout << "initial:";
            for (const auto& v : rec.initial) std::cout << ' ' << v.get_str();
            std::cout << "\n";
            if (rec_count > 0) {
                std::cout << "terms:";
                for (const auto& t : j["terms"]) std::cout << ' ' << t.dump();
                std::cout << "\n";
            }
        }
    });

    // ---- closed ----
    std::string closed_family;
    long closed_n = 0;
    auto* closed = app.add_subcommand("closed", "Exact closed forms for the worked degree-3 families");
    closed->add_option("--family", closed_family, "sigma3|sigma31|sigma321|sigma3pert")->required();
    closed->add_option("--n", closed_n)->required();
    closed->callback([&] {
        std::cout << closed_form_eval(closed_form_family_from_string(closed_family), closed_n).get_str()
                  << "\n";
    });

    // ---- period ----
    CommonArgs per_args;
    std::string per_method = "auto";
    bool per_weak_restricted = false;
    bool per_full = false;
    uint64_t per_budget = kDefaultRhoBudget;
    auto* per = app.add_subcommand("period", "Period report (pi, pi*, alpha, s, beta, bound) for a prime");
    per->add_option("--degrees", per_args.degrees)->required();
    per->add_option("--prime", per_args.prime)->required();
    per->add_option("--method", per_method, "scan|matrix|vince|all|auto");
    per->add_flag("--weak-restricted", per_weak_restricted, "also compute alpha*, beta*");
    per->add_flag("--full", per_full, "use the full recurrence");
    per->add_option("--budget", per_budget, "integer-factorization step budget (>= 10^6)");
    per->callback([&] {
        if (per_budget < 1'000'000) throw CLI::ValidationError("--budget must be >= 10^6");
        DegreeSet d(parse_degree_list(per_args.degrees));
        PrimeModulus p(per_args.prime);
        Recurrence rec = make_recurrence(d, !per_full);
        if (per_method == "all") {
            PeriodReportOptions o;
            o.period.rho_budget = per_budget;
            o.with_weak_restricted = per_weak_restricted;
            o.method = PeriodMethod::Vince;
            PeriodReport rv = period_report(rec, p, &d, o);
            o.method = PeriodMethod::Matrix;
            PeriodReport rm = period_report(rec, p, &d, o);
            o.method = PeriodMethod::Scan;
            PeriodReport rs = period_report(rec, p, &d, o);
            if (rv.pi != rm.pi || rv.pi != rs.pi || rv.pi_star != rm.pi_star ||
                rv.pi_star != rs.pi_star) {
                std::cerr << "method disagreement: vince pi=" << rv.pi << " pi*=" << rv.pi_star
                          << "; matrix pi=" << rm.pi << " pi*=" << rm.pi_star
                          << "; scan pi=" << rs.pi << " pi*=" << rs.pi_star << "\n";
                exit_code = kExitDisagreement;
                return;
            }
            rv.methods["pi"] = "all-agree";
            rv.methods["pi_star"] = "all-agree";
            std::cout << period_report_json(rv).dump() << "\n";
        } else {
            PeriodReportOptions o;
            o.period.rho_budget = per_budget;
            o.method = period_method_from_string(per_method);
            o.with_weak_restricted = per_weak_restricted;
            std::cout << period_report_json(period_report(rec, p, &d, o)).dump() << "\n";
        }
    });

    // ---- avoid ----
    CommonArgs av_args;
    auto* av = app.add_subcommand("avoid", "Does the sequence avoid p? Scans one full Pisano period");
    av->add_option("--degrees", av_args.degrees)->required();
    av->add_option("--prime", av_args.prime)->required();
    av->add_option("--perturb", av_args.perturb, "ANF of a perturbation F");
    av->add_option("--j", av_args.j, "variable count of the perturbation");
    av->callback([&] {
        DegreeSet d(parse_degree_list(av_args.degrees));
        PrimeModulus p(av_args.prime);
        AvoidanceResult res;
        if (!av_args.perturb.empty()) {
            if (av_args.j < 1) throw CLI::ValidationError("--perturb requires --j");
            res = avoids(d, Perturbation::parse_anf(av_args.perturb, av_args.j), p);
        } else {
            res = avoids(d, p);
        }
        std::cout << avoidance_json(&d, res).dump() << "\n";
    });

    // ---- zeros ----
    CommonArgs z_args;
    auto* zc = app.add_subcommand("zeros", "Count zeros of S(sigma_{n,d}) mod p over one Pisano period");
    zc->add_option("--degrees", z_args.degrees)->required();
    zc->add_option("--prime", z_args.prime)->required();
    zc->add_option("--format", z_args.format, "text|json");
    zc->callback([&] {
        DegreeSet d(parse_degree_list(z_args.degrees));
        PrimeModulus p(z_args.prime);
        long long z = zeros_in_period(d, p);
        if (z_args.format == "json")
            std::cout << json{{"degrees", d.degrees()}, {"p", p.value}, {"zeros", z}}.dump() << "\n";
        else
            std::cout << z << "\n";
    });

    // ---- find-p ----
    int fp_k = 0;
    uint64_t fp_max_m = 1'000'000;
    int fp_jobs = default_jobs();
    auto* fp = app.add_subcommand("find-p", "Smallest avoided prime of the form 2^r m + 1 for sigma_{n,k}");
    fp->add_option("--k", fp_k)->required();
    fp->add_option("--max-m", fp_max_m, "give up after this many multipliers m");
    fp->add_option("--jobs", fp_jobs, "worker threads");
    fp->callback([&] {
        FindPrimeResult res = find_avoiding_prime(fp_k, fp_max_m, fp_jobs);
        if (!res.found) {
            std::cerr << "exhausted: no avoiding prime with m <= " << res.max_m_tested << "\n";
            exit_code = kExitExhausted;
            return;
        }
        std::cout << res.prime << "\n";
    });

    // ---- scan ----
    int sc_max_degree = 0;
    uint64_t sc_prime = 0;
    int sc_jobs = default_jobs();
    std::string sc_format = "jsonl";
    auto* sc = app.add_subcommand("scan", "Exhaustive avoider scan over all degree subsets of {1..max}");
    sc->add_option("--max-degree", sc_max_degree)->required();
    sc->add_option("--prime", sc_prime)->required();
    sc->add_option("--jobs", sc_jobs, "worker threads");
    sc->add_option("--format", sc_format, "jsonl|csv|list");
    sc->callback([&] {
        PrimeModulus p(sc_prime);
        std::vector<DegreeSet> found = scan_avoiders(sc_max_degree, p, sc_jobs);
        if (sc_format == "csv") std::cout << "degrees,p,avoids,first_zero,period\n";
        for (const DegreeSet& d : found) {
            if (sc_format == "list") {
                std::cout << d.to_string() << "\n";
            } else if (sc_format == "csv") {
                std::string degs;
                for (size_t i = 0; i < d.degrees().size(); ++i)
                    degs += (i ? " " : "") + std::to_string(d.degrees()[i]);
                AvoidanceResult res = avoids(d, p);
                std::cout << degs << ',' << p.value << ",true,," << res.period_scanned.get_str()
                          << "\n";
            } else {
                AvoidanceResult res = avoids(d, p);
                std::cout << avoidance_json(&d, res).dump() << "\n";
            }
        }
    });

    // ---- thmp ----
    CommonArgs th_args;
    auto* th = app.add_subcommand("thmp", "Arithmetic progressions of primes dividing S(sigma_{p,d})");
    th->add_option("--degrees", th_args.degrees)->required();
    th->callback([&] {
        DegreeSet d(parse_degree_list(th_args.degrees));
        ProgressionReport rep = prime_divisor_progressions(d);
        json j;
        j["degrees"] = d.degrees();
        j["r"] = rep.r;
        j["modulus"] = 1 << rep.r;
        j["all_residues"] = rep.all_residues;
        j["odd_residues"] = rep.odd_residues;
        j["density"] = mpq_string(rep.density);
        if (rep.empty_reason) j["empty_reason"] = *rep.empty_reason;
        std::cout << j.dump() << "\n";
    });

    // ---- pert2 ----
    std::string p2_perturb;
    int p2_j = 0;
    auto* p2 = app.add_subcommand("pert2", "Degree-2 perturbation balance/divisor analysis");
    p2->add_option("--perturb", p2_perturb, "ANF of F")->required();
    p2->add_option("--j", p2_j, "variable count of F")->required();
    p2->callback([&] {
        Deg2Report rep = analyze_deg2_perturbation(Perturbation::parse_anf(p2_perturb, p2_j));
        json j;
        j["j"] = rep.j;
        j["d_j1"] = mpz_json(rep.d_j1);
        j["d_j2"] = mpz_json(rep.d_j2);
        j["balanced_possible"] = rep.balanced_possible;
        if (rep.all_zero) j["all_zero"] = true;
        if (rep.balanced_possible) {
            j["zero_start"] = rep.zero_start;
            j["zero_step"] = 4;
        } else {
            json four = json::array();
            for (const auto& v : rep.four_numbers) four.push_back(mpz_json(v));
            j["four_numbers"] = four;
            json primes = json::array();
            for (const auto& q : rep.prime_set) primes.push_back(mpz_json(q));
            j["prime_set"] = primes;
            json classes = json::array();
            for (const auto& [q, n0] : rep.prime_classes)
                classes.push_back(json{{"prime", mpz_json(q)}, {"first_index", n0}, {"step", 4}});
            j["prime_classes"] = classes;
        }
        std::cout << j.dump() << "\n";
    });

    // ---- ratio ----
    CommonArgs ra_args;
    long ra_nmax = 0;
    auto* ra = app.add_subcommand("ratio", "S(sigma_{n,d})/2^n as exact rational + decimal, n = 1..n-max");
    ra->add_option("--degrees", ra_args.degrees)->required();
    ra->add_option("--n-max", ra_nmax)->required();
    ra->add_option("--format", ra_args.format, "text|csv");
    ra->callback([&] {
        if (ra_nmax < 1 || ra_nmax > 200) throw CLI::ValidationError("--n-max must be in [1, 200]");
        DegreeSet d(parse_degree_list(ra_args.degrees));
        if (ra_args.format == "csv") std::cout << "n,rational,decimal\n";
        for (long n = 1; n <= ra_nmax; ++n) {
            mpq_class ratio(exp_sum_exact(static_cast<int>(n), d).value, mpz_class(1) << n);
            ratio.canonicalize();
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.15g", mpq_get_d(ratio.get_mpq_t()));
            const char sep = ra_args.format == "csv" ? ',' : ' ';
            std::cout << n << sep << mpq_string(ratio) << sep << buf << "\n";
        }
    });

    // ---- trivial ----
    int tr_l = 0;
    long tr_max_n = 0;
    auto* tr = app.add_subcommand("trivial", "Trivially balanced positions n = 2^{l+1}D - 1 of sigma_{n,2^l}");
    tr->add_option("--l", tr_l)->required();
    tr->add_option("--max-n", tr_max_n)->required();
    tr->callback([&] {
        bool first = true;
        for (long n : trivial_zero_positions(tr_l, tr_max_n)) {
            std::cout << (first ? "" : " ") << n;
            first = false;
        }
        std::cout << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return exit_code;
}
