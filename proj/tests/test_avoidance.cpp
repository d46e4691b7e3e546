/* Copyright (C) 2026 the symsum authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "symsum/avoidance.hpp"

using namespace symsum;

TEST_CASE("avoids") {
    SUBCASE("sigma_6 avoids 3 over its period of 8") {
        AvoidanceResult res = avoids(DegreeSet({6}), PrimeModulus(3));
        CHECK(res.avoids);
        CHECK(res.period_scanned == 8);
        CHECK_FALSE(res.first_zero_index.has_value());
    }
    SUBCASE("degree 1 in the set forces a zero at n = 1") {
        AvoidanceResult res = avoids(DegreeSet({1, 5}), PrimeModulus(13));
        CHECK_FALSE(res.avoids);
        CHECK(res.first_zero_index == 1);
    }
    SUBCASE("sigma_3 cannot avoid 7 (p = 3 mod 4)") {
        CHECK_FALSE(avoids(DegreeSet({3}), PrimeModulus(7)).avoids);
    }
    SUBCASE("trivially balanced zero shows up exactly") {
        AvoidanceResult res = avoids(DegreeSet({2}), PrimeModulus(5));
        CHECK_FALSE(res.avoids);
        CHECK(res.first_zero_index == 3);  // S(sigma_{3,2}) = 0
    }
    SUBCASE("a scan-length override is honored") {
        AvoidOptions opts;
        opts.scan_length = mpz_class(40);  // 41 = 1 mod 8, pi | 40
        AvoidanceResult res = avoids(DegreeSet({6}), PrimeModulus(41), opts);
        CHECK(res.avoids);
        CHECK(res.period_scanned == 40);
    }
    SUBCASE("perturbed sequences: sampled members of Av(4; X1X2)") {
        Perturbation f = Perturbation::parse_anf("1,2", 2);
        DegreeSet d({4});
        for (uint64_t p : {17ull, 73ull, 89ull, 97ull})
            CHECK(avoids(d, f, PrimeModulus(p)).avoids);
        // perturbed values start at n = j + 1 = 3
        AvoidanceResult res = avoids(d, f, PrimeModulus(3));
        if (!res.avoids) CHECK(*res.first_zero_index >= 3);
    }
}

TEST_CASE("zeros_in_period") {
    CHECK(zeros_in_period(DegreeSet({8}), PrimeModulus(3)) == 38);
    CHECK(zeros_in_period(DegreeSet({12}), PrimeModulus(3)) == 17);

    SUBCASE("at least the trivial positions for powers of two") {
        for (int l = 1; l <= 3; ++l) {
            DegreeSet d({1 << l});
            PrimeModulus p(3);
            Recurrence rec = make_recurrence(d, true);
            const mpz_class pi = pisano_period(rec, p);
            const long long trivial =
                static_cast<long long>(trivial_zero_positions(l, pi.get_si()).size());
            CHECK(zeros_in_period(d, p) >= trivial);
        }
    }
}

TEST_CASE("find_avoiding_prime") {
    CHECK(find_avoiding_prime(3).prime == 5);
    CHECK(find_avoiding_prime(6).prime == 41);
    CHECK(find_avoiding_prime(12).prime == 17);
    CHECK(find_avoiding_prime(5).prime == 17);

    SUBCASE("powers of two are rejected loudly") {
        CHECK_THROWS_AS(find_avoiding_prime(8), std::invalid_argument);
        CHECK_THROWS_AS(find_avoiding_prime(2), std::invalid_argument);
    }

    SUBCASE("exhaustion is a flagged result") {
        FindPrimeResult res = find_avoiding_prime(6, /*max_m=*/2);
        CHECK_FALSE(res.found);
        CHECK(res.max_m_tested == 2);
    }

    SUBCASE("minimality: every smaller prime of the right form fails") {
        // p(6) = 41 = 8*5 + 1; the smaller candidates 17 = 8*2+1 must fail
        AvoidOptions opts;
        opts.scan_length = mpz_class(16);
        CHECK_FALSE(avoids(DegreeSet({6}), PrimeModulus(17), opts).avoids);
    }

    SUBCASE("worker count does not change the result") {
        CHECK(find_avoiding_prime(6, 1'000'000, 3).prime == 41);
        CHECK(find_avoiding_prime(12, 1'000'000, 2).prime == 17);
    }
}

TEST_CASE("scan_avoiders") {
    SUBCASE("the nine degree-<=7 avoiders of 3") {
        std::vector<DegreeSet> found = scan_avoiders(7, PrimeModulus(3));
        std::vector<DegreeSet> expect{
            DegreeSet({2, 3, 4, 5, 6, 7}), DegreeSet({2, 3, 4, 5, 7}), DegreeSet({2, 3, 5}),
            DegreeSet({2, 3, 5, 6}),       DegreeSet({4, 5, 6}),       DegreeSet({4, 5, 6, 7}),
            DegreeSet({4, 6}),             DegreeSet({4, 7}),          DegreeSet({6})};
        CHECK(found == expect);
    }
    SUBCASE("no avoider of 3 has max degree <= 3") {
        CHECK(scan_avoiders(3, PrimeModulus(3)).empty());
    }
    SUBCASE("deterministic under workers") {
        CHECK(scan_avoiders(7, PrimeModulus(3), 3) == scan_avoiders(7, PrimeModulus(3), 1));
    }
}

TEST_CASE("prime_divisor_progressions") {
    SUBCASE("the worked degree set {3,4,7,9}") {
        ProgressionReport rep = prime_divisor_progressions(DegreeSet({3, 4, 7, 9}));
        CHECK(rep.r == 4);
        CHECK(rep.all_residues == std::vector<int>{3, 4, 5, 6, 7, 9, 12, 14});
        CHECK(rep.odd_residues == std::vector<int>{3, 5, 7, 9});
        CHECK(rep.density == mpq_class(1, 2));
        CHECK_FALSE(rep.empty_reason.has_value());
    }
    SUBCASE("adjacent pairs have no odd residues") {
        ProgressionReport rep = prime_divisor_progressions(DegreeSet({4, 5}));
        CHECK(rep.odd_residues.empty());
        CHECK(rep.density == 0);
        REQUIRE(rep.empty_reason.has_value());
        ProgressionReport rep2 = prime_divisor_progressions(DegreeSet({2, 3, 6, 7}));
        CHECK(rep2.odd_residues.empty());
        CHECK(rep2.empty_reason.has_value());
    }
    SUBCASE("elementary density is 1/2^{w2(kbar)-1}") {
        for (int k = 2; k <= 12; ++k) {
            ProgressionReport rep = prime_divisor_progressions(DegreeSet({k}));
            const unsigned kbar = 2u * (static_cast<unsigned>(k) / 2u) + 1u;
            const int w2 = std::popcount(kbar);
            CHECK(rep.density == mpq_class(1, 1L << (w2 - 1)));
        }
    }
    SUBCASE("primes in the progressions divide their own term") {
        std::mt19937 rng(113);
        std::uniform_int_distribution<int> coin(0, 1);
        for (int trial = 0; trial < 12; ++trial) {
            std::vector<int> degrees;
            while (degrees.empty())
                for (int k = 1; k <= 12; ++k)
                    if (coin(rng)) degrees.push_back(k);
            DegreeSet d(degrees);
            ProgressionReport rep = prime_divisor_progressions(d);
            const int modulus = 1 << rep.r;
            std::set<int> odd(rep.odd_residues.begin(), rep.odd_residues.end());
            int checked = 0;
            for (uint64_t p = 3; checked < 10 && p < 2000; p += 2) {
                if (!is_prime_u64(p)) continue;
                if (!odd.count(static_cast<int>(p % static_cast<uint64_t>(modulus)))) continue;
                ++checked;
                mpz_class s = exp_sum_exact(static_cast<int>(p), d).value;
                CHECK(mpz_divisible_ui_p(s.get_mpz_t(), p));
            }
        }
    }

    SUBCASE("progression membership matches the parity rule for 50 sets") {
        // S(sigma_{p,d}) = 1 + (-1)^{parity(p)} mod p for odd primes, so
        // membership reduces to parity_exponent(p, d) = 1.
        std::mt19937 rng(131);
        std::uniform_int_distribution<int> coin(0, 1);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<int> degrees;
            while (degrees.empty())
                for (int k = 1; k <= 12; ++k)
                    if (coin(rng)) degrees.push_back(k);
            DegreeSet d(degrees);
            ProgressionReport rep = prime_divisor_progressions(d);
            const uint64_t modulus = uint64_t{1} << rep.r;
            std::set<int> odd(rep.odd_residues.begin(), rep.odd_residues.end());
            for (uint64_t p = 3; p < 10'000; p += 2) {
                if (!is_prime_u64(p)) continue;
                const bool in_prog = odd.count(static_cast<int>(p % modulus)) > 0;
                CHECK(in_prog == (parity_exponent(p, d) == 1));
            }
        }
    }
}

TEST_CASE("analyze_deg2_perturbation") {
    SUBCASE("the worked X1X2X3 + X4X5X6 example") {
        Perturbation f = Perturbation::parse_anf("1,2,3;4,5,6", 6);
        Deg2Report rep = analyze_deg2_perturbation(f);
        CHECK(rep.d_j1 == -24);
        CHECK(rep.d_j2 == 8);
        CHECK_FALSE(rep.balanced_possible);
        CHECK(rep.four_numbers == std::vector<mpz_class>{-56, -24, 8, -32});
        CHECK(rep.prime_set == std::vector<mpz_class>{2, 3, 7});
        REQUIRE(rep.prime_classes.size() == 2);
        CHECK(rep.prime_classes[0] == std::pair<mpz_class, long>{3, 7});
        CHECK(rep.prime_classes[1] == std::pair<mpz_class, long>{7, 10});

        // verify the class attribution over the first 100 terms
        std::vector<mpz_class> d(100);
        d[0] = rep.d_j1;
        d[1] = rep.d_j2;
        for (size_t i = 2; i < d.size(); ++i) d[i] = 2 * d[i - 1] - 2 * d[i - 2];
        for (size_t i = 0; i < d.size(); ++i) {
            const long n = rep.j + 1 + static_cast<long>(i);
            CHECK((mpz_divisible_ui_p(d[i].get_mpz_t(), 3) != 0) == (n % 4 == 3));
            CHECK((mpz_divisible_ui_p(d[i].get_mpz_t(), 7) != 0) == (n % 4 == 2));
        }
    }

    SUBCASE("unperturbed sigma_2 lands on the trivial zero progression") {
        Perturbation zero(2, {});
        Deg2Report rep = analyze_deg2_perturbation(zero);
        CHECK(rep.d_j1 == 0);  // S(sigma_{3,2}) = 0: the infinity branch
        CHECK(rep.balanced_possible);
        CHECK(rep.zero_start == 3);
        Perturbation zero1(1, {});
        Deg2Report rep1 = analyze_deg2_perturbation(zero1);
        CHECK(rep1.d_j2 == 0);  // ratio - 1 = -1 branch
        CHECK(rep1.balanced_possible);
        CHECK(rep1.zero_start == 3);
    }

    SUBCASE("F = X1 on one variable: oracle-resolved balanced branch") {
        Perturbation f = Perturbation::parse_anf("1", 1);
        Deg2Report rep = analyze_deg2_perturbation(f);
        CHECK(rep.d_j1 == exp_sum_truthtable(2, DegreeSet({2}), &f));
        CHECK(rep.d_j2 == exp_sum_truthtable(3, DegreeSet({2}), &f));
        CHECK(rep.d_j1 == 2);
        CHECK(rep.d_j2 == 4);  // ratio - 1 = +1: zeros from n = 5
        CHECK(rep.balanced_possible);
        CHECK(rep.zero_start == 5);
        CHECK(exp_sum_truthtable(5, DegreeSet({2}), &f) == 0);
        CHECK(exp_sum_truthtable(9, DegreeSet({2}), &f) == 0);
    }

    SUBCASE("prime set is exact on random non-balanced perturbations") {
        std::mt19937 rng(127);
        std::uniform_int_distribution<int> jdist(1, 5);
        int analyzed = 0;
        for (int trial = 0; trial < 60 && analyzed < 20; ++trial) {
            const int j = jdist(rng);
            std::uniform_int_distribution<uint32_t> mono(0, (1u << j) - 1);
            std::vector<uint32_t> ms;
            const int count = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < count; ++i) ms.push_back(mono(rng));
            Perturbation f(j, ms);
            Deg2Report rep = analyze_deg2_perturbation(f);
            if (rep.balanced_possible) continue;
            ++analyzed;
            std::set<mpz_class> allowed(rep.prime_set.begin(), rep.prime_set.end());
            std::set<mpz_class> seen;
            std::vector<mpz_class> d(200);
            d[0] = rep.d_j1;
            d[1] = rep.d_j2;
            for (size_t i = 2; i < d.size(); ++i) d[i] = 2 * d[i - 1] - 2 * d[i - 2];
            for (const mpz_class& v : d) {
                REQUIRE(v != 0);
                Factorization fact = factor_integer(abs(v));
                for (const auto& [q, e] : fact.factors) {
                    (void)e;
                    CHECK(allowed.count(q) == 1);
                    seen.insert(q);
                }
            }
            for (const mpz_class& q : rep.prime_set) CHECK(seen.count(q) == 1);
        }
        CHECK(analyzed >= 5);
    }
}

TEST_CASE("deg3_avoidance_criterion") {
    CHECK(deg3_avoidance_criterion(PrimeModulus(5)));
    CHECK_FALSE(deg3_avoidance_criterion(PrimeModulus(7)));
    CHECK(deg3_avoidance_criterion(PrimeModulus(13)));

    SUBCASE("criterion = direct avoidance for p < 500, both degree sets") {
        for (uint64_t p = 3; p < 500; p += 2) {
            if (!is_prime_u64(p)) continue;
            PrimeModulus pm(p);
            const bool crit = deg3_avoidance_criterion(pm);
            CHECK(avoids(DegreeSet({3}), pm).avoids == crit);
            CHECK(avoids(DegreeSet({2, 3}), pm).avoids == crit);
        }
    }

    SUBCASE("all primes 8q+5 below 500 are avoided") {
        for (uint64_t p = 5; p < 500; p += 8)
            if (is_prime_u64(p)) CHECK(deg3_avoidance_criterion(PrimeModulus(p)));
    }
}
