/* Copyright (C) 2026 the symsum authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "symsum/finite_fields.hpp"
#include "symsum/recurrences.hpp"

using namespace symsum;

TEST_CASE("is_prime_u64") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(is_prime_u64(41));
    CHECK(is_prime_u64(176129));
    CHECK(is_prime_u64(2305843009213693951ull));  // 2^61 - 1
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(561));         // Carmichael
    CHECK_FALSE(is_prime_u64(3215031751ull));  // strong pseudoprime to 2,3,5,7
    CHECK_FALSE(is_prime_u64(uint64_t{1000003} * 1000033));
}

TEST_CASE("64-bit modular arithmetic") {
    const uint64_t p = (uint64_t{1} << 61) - 1;
    CHECK(mul_mod(p - 1, p - 1, p) == 1);
    CHECK(pow_mod(2, p - 1, p) == 1);  // Fermat
    CHECK(pow_mod(2, mpz_class("2305843009213693950"), p) == 1);
    for (uint64_t a : {2ull, 3ull, 123456789ull}) CHECK(mul_mod(a, inv_mod(a, p), p) == 1);
    CHECK_THROWS_AS(inv_mod(6, 9), std::invalid_argument);
}

TEST_CASE("PrimeModulus certification") {
    CHECK(PrimeModulus(3).value == 3);
    CHECK_THROWS_AS(PrimeModulus(2), std::invalid_argument);
    CHECK_THROWS_AS(PrimeModulus(9), std::invalid_argument);
    CHECK_THROWS_AS(PrimeModulus(uint64_t{1} << 62), std::invalid_argument);
}

TEST_CASE("factor_integer") {
    Factorization f = factor_integer(6560);
    CHECK(f.complete);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0] == std::pair<mpz_class, unsigned>{2, 5});
    CHECK(f.factors[1] == std::pair<mpz_class, unsigned>{5, 1});
    CHECK(f.factors[2] == std::pair<mpz_class, unsigned>{41, 1});
    CHECK(f.product() == 6560);
    // 6560 = 3^8 - 1, the period bound behind the large zero-count table
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), 3, 8);
    CHECK(f.n == t - 1);

    CHECK(factor_integer(2).factors == std::vector<std::pair<mpz_class, unsigned>>{{2, 1}});

    SUBCASE("semiprime beyond trial division") {
        mpz_class n = mpz_class(1000003) * 1000033;
        Factorization g = factor_integer(n);
        CHECK(g.complete);
        REQUIRE(g.factors.size() == 2);
        CHECK(g.factors[0].first == 1000003);
        CHECK(g.factors[1].first == 1000033);
    }

    SUBCASE("budget exhaustion is flagged, not fatal") {
        mpz_class n = mpz_class("123456789012345678901234567891") *
                      mpz_class("987654321098765432109876543211");
        Factorization g = factor_integer(n, /*rho_budget=*/10);
        CHECK_FALSE(g.complete);
        CHECK(g.cofactor > 1);
        CHECK(g.product() == n);
    }

    SUBCASE("product invariant on random inputs") {
        std::mt19937_64 rng(97);
        for (int trial = 0; trial < 25; ++trial) {
            mpz_class n = mpz_class(static_cast<unsigned long>(2 + rng() % 1'000'000'000));
            Factorization g = factor_integer(n);
            CHECK(g.complete);
            CHECK(g.product() == n);
            for (const auto& [q, e] : g.factors) {
                CHECK(e >= 1);
                CHECK(mpz_probab_prime_p(q.get_mpz_t(), 30) != 0);
            }
        }
    }
}

TEST_CASE("ord_mod") {
    CHECK(ord_mod(3, 16) == 4);
    CHECK(ord_mod(4, 5) == 2);
    CHECK(ord_mod(1, 97) == 1);
    CHECK(ord_mod(2, 7) == 3);
    CHECK(ord_mod(3, 32) == 8);
    CHECK_THROWS_AS(ord_mod(6, 9), std::invalid_argument);

    SUBCASE("powers of two: order doubles or stays as the modulus doubles") {
        for (uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 41ull, 97ull}) {
            CHECK(ord_mod(p % 2, 2) == 1);
            uint64_t prev = ord_mod(p % 4, 4);
            CHECK(prev <= 2);
            for (int i = 3; i <= 10; ++i) {
                const uint64_t mod = uint64_t{1} << i;
                const uint64_t cur = ord_mod(p % mod, mod);
                CHECK((cur == prev || cur == 2 * prev));
                prev = cur;
            }
        }
    }

    SUBCASE("definition: a^e = 1 and no smaller exponent") {
        std::mt19937_64 rng(101);
        for (int trial = 0; trial < 20; ++trial) {
            uint64_t n = 3 + rng() % 5000;
            uint64_t a = 1 + rng() % (n - 1);
            if (std::gcd(a, n) != 1) continue;
            const uint64_t e = ord_mod(a, n);
            CHECK(pow_mod(a, e, n) == 1);
            for (uint64_t q = 2; q <= e; ++q)
                if (e % q == 0 && is_prime_u64(q)) CHECK(pow_mod(a, e / q, n) != 1);
        }
    }
}

TEST_CASE("sorted_divisors") {
    Factorization f = factor_integer(12);
    std::vector<mpz_class> d = sorted_divisors(f.factors);
    CHECK(d == std::vector<mpz_class>{1, 2, 3, 4, 6, 12});
}

TEST_CASE("F_p[t] arithmetic round trips") {
    std::mt19937_64 rng(103);
    const uint64_t p = 10007;
    auto random_poly = [&](int maxdeg) {
        FpPoly f(static_cast<size_t>(1 + rng() % maxdeg) + 1);
        for (auto& c : f) c = rng() % p;
        f.back() = 1 + rng() % (p - 1);
        return f;
    };
    for (int trial = 0; trial < 40; ++trial) {
        FpPoly a = random_poly(8), b = random_poly(5);
        FpPoly q, r;
        fp_divrem(a, b, p, q, r);
        CHECK(fp_add(fp_mul(q, b, p), r, p) == a);
        CHECK(fp_deg(r) < fp_deg(b));
        FpPoly g = fp_gcd(a, b, p);
        CHECK(fp_mod(a, g, p).empty());
        CHECK(fp_mod(b, g, p).empty());
    }
}

TEST_CASE("factor_poly_mod_p") {
    SUBCASE("worked cases") {
        // t^2 - 2t + 2 is irreducible over F_3
        auto f1 = factor_poly_mod_p(cyclotomic_shifted(2), PrimeModulus(3));
        REQUIRE(f1.size() == 1);
        CHECK(f1[0].second == 1);
        CHECK(fp_deg(f1[0].first) == 2);

        // 5 = 1 mod 4: (t-2) Phi_4(t-1) splits into three linear factors
        IntPolynomial prod = poly_mul(IntPolynomial({mpz_class(-2), mpz_class(1)}),
                                      cyclotomic_shifted(2));
        auto f2 = factor_poly_mod_p(prod, PrimeModulus(5));
        REQUIRE(f2.size() == 3);
        for (const auto& [g, e] : f2) {
            CHECK(fp_deg(g) == 1);
            CHECK(e == 1);
        }

        auto f3 = factor_poly_mod_p(IntPolynomial({mpz_class(-2), mpz_class(1)}), PrimeModulus(7));
        REQUIRE(f3.size() == 1);
        CHECK(f3[0].first == FpPoly{5, 1});  // t - 2 = t + 5
    }

    SUBCASE("repeated and p-th power factors") {
        // (t-1)^2 over F_5
        auto f = factor_poly_mod_p(IntPolynomial({mpz_class(1), mpz_class(-2), mpz_class(1)}),
                                   PrimeModulus(5));
        REQUIRE(f.size() == 1);
        CHECK(f[0].second == 2);
        // (t-1)^3 over F_3 has vanishing derivative
        auto g = factor_poly_mod_p(
            IntPolynomial({mpz_class(-1), mpz_class(3), mpz_class(-3), mpz_class(1)}),
            PrimeModulus(3));
        REQUIRE(g.size() == 1);
        CHECK(g[0].second == 3);
        CHECK(g[0].first == FpPoly{2, 1});
    }

    SUBCASE("re-multiplied factors reproduce f mod p") {
        std::mt19937_64 rng(107);
        for (int trial = 0; trial < 50; ++trial) {
            const uint64_t p = trial % 2 == 0 ? 997 : 3 + 2 * (rng() % 400);
            if (!is_prime_u64(p)) continue;
            std::vector<mpz_class> coeffs(2 + rng() % 7);
            for (auto& c : coeffs) c = mpz_class(static_cast<long>(rng() % 2000) - 1000);
            coeffs.push_back(1);
            IntPolynomial f(coeffs);
            PrimeModulus pm(p);
            FpPoly prod{1};
            for (const auto& [g, e] : factor_poly_mod_p(f, pm))
                for (unsigned i = 0; i < e; ++i) prod = fp_mul(prod, g, p);
            CHECK(prod == fp_from_int_poly(f, p));
        }
    }

    SUBCASE("the recurrence charpolys are square-free mod every odd prime") {
        std::vector<IntPolynomial> chis;
        for (int r = 1; r <= 4; ++r) chis.push_back(full_charpoly(r));
        chis.push_back(minimal_charpoly_elementary(6));
        chis.push_back(minimal_charpoly_elementary(12));
        int tested = 0;
        for (uint64_t p = 3; tested < 100; p += 2) {
            if (!is_prime_u64(p)) continue;
            ++tested;
            PrimeModulus pm(p);
            for (const IntPolynomial& chi : chis)
                for (const auto& [g, e] : factor_poly_mod_p(chi, pm)) {
                    (void)g;
                    CHECK(e == 1);
                }
        }
    }
}

TEST_CASE("extension fields and element orders") {
    SUBCASE("root of t^2 - 2t + 2 over F_3 has order 8") {
        PrimeModulus p3(3);
        auto factors = factor_poly_mod_p(cyclotomic_shifted(2), p3);
        REQUIRE(factors.size() == 1);
        auto field = std::make_shared<ExtField>(p3, factors[0].first);
        CHECK(field->group_order() == 8);
        ExtFieldElement root{field, field->generator()};
        auto ord = element_order(root, factor_integer(8));
        REQUIRE(ord.has_value());
        CHECK(*ord == 8);
    }

    SUBCASE("2 generates F_5^x") {
        PrimeModulus p5(5);
        auto field = std::make_shared<ExtField>(p5, FpPoly{3, 1});  // t - 2 = t + 3
        ExtFieldElement two{field, field->generator()};
        CHECK(two.coords == FpPoly{2});
        auto ord = element_order(two, factor_integer(4));
        REQUIRE(ord.has_value());
        CHECK(*ord == 4);
    }

    SUBCASE("identity has order 1; incomplete factorization is surfaced") {
        PrimeModulus p5(5);
        auto field = std::make_shared<ExtField>(p5, FpPoly{3, 1});
        ExtFieldElement one{field, field->one()};
        CHECK(*element_order(one, factor_integer(4)) == 1);
        Factorization partial = factor_integer(4);
        partial.complete = false;
        CHECK_FALSE(element_order(one, partial).has_value());
        ExtFieldElement zero{field, FpPoly{}};
        CHECK_THROWS_AS(element_order(zero, factor_integer(4)), std::invalid_argument);
    }

    SUBCASE("order definition: x^e = 1, x^{e/q} != 1") {
        PrimeModulus p(13);
        auto factors = factor_poly_mod_p(cyclotomic_shifted(3), p);
        for (const auto& [f, e] : factors) {
            (void)e;
            auto field = std::make_shared<ExtField>(p, f);
            Factorization group = factor_integer(field->group_order());
            ExtFieldElement root{field, field->generator()};
            auto ord = element_order(root, group);
            REQUIRE(ord.has_value());
            CHECK(fp_is_one(field->pow(root.coords, *ord)));
            Factorization of = factor_integer(*ord);
            for (const auto& [q, mult] : of.factors) {
                (void)mult;
                CHECK_FALSE(fp_is_one(field->pow(root.coords, *ord / q)));
            }
        }
    }
}
