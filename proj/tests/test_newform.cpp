#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <numeric>

#include "core/catalog.hpp"

using namespace rsw;

TEST_CASE("delta eta expansion: first coefficients and multiplicativity") {
    auto a = eta_product_coeffs(catalog_form("delta"), 8);
    REQUIRE(a.size() == 8);
    CHECK(a[0] == 1);
    CHECK(a[1] == -24);
    CHECK(a[2] == 252);
    CHECK(a[3] == -1472);
    CHECK(a[4] == 4830);
    CHECK(a[5] == a[1] * a[2]);  // tau(6) = tau(2) tau(3)
}

TEST_CASE("level-11 eta expansion matches elliptic point counts") {
    auto a = eta_product_coeffs(catalog_form("eta11"), 20);
    CHECK(a[0] == 1);
    CHECK(a[1] == -2);  // a(2), also -2 from counting points over F_2
    const auto& curve = *catalog_form("eta11").crosscheck_curve;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 13ull, 17ull, 19ull})
        CHECK(a[p - 1] == ellcurve_ap(curve, p));
}

TEST_CASE("ellcurve_ap: pinned small-prime values for the conductor-11 curve") {
    std::array<i64, 5> e{0, -1, 1, -10, -20};
    CHECK(ellcurve_ap(e, 2) == -2);   // 5 points over F_2
    CHECK(ellcurve_ap(e, 3) == -1);   // 5 points over F_3
    CHECK(ellcurve_ap(e, 11) == 1);   // split node
    CHECK(ellcurve_ap(e, 5) == 1);
    CHECK(ellcurve_ap(e, 7) == -2);
}

TEST_CASE("ellcurve_ap: node vs point-count route at the bad prime") {
    // independent oracle: a_p = p - #smooth points = p - (affine nonsingular + 1)
    std::array<i64, 5> e{0, -1, 1, -10, -20};
    const u64 p = 11;
    auto eq = [&](i64 x, i64 y) {
        i64 v = (y * y + y) - (x * x * x - x * x - 10 * x - 20);
        v %= static_cast<i64>(p);
        return (v % static_cast<i64>(p) + static_cast<i64>(p)) % static_cast<i64>(p) == 0;
    };
    int affine = 0;
    int singular = 0;
    for (i64 x = 0; x < 11; ++x)
        for (i64 y = 0; y < 11; ++y) {
            if (!eq(x, y)) continue;
            ++affine;
            // dF/dx = -(3x^2 - 2x - 10), dF/dy = 2y + 1
            i64 fx = (-(3 * x * x - 2 * x - 10)) % 11;
            i64 fy = (2 * y + 1) % 11;
            if ((fx % 11 + 11) % 11 == 0 && (fy % 11 + 11) % 11 == 0) ++singular;
        }
    REQUIRE(singular == 1);
    i64 ap_count = static_cast<i64>(p) - ((affine - singular) + 1);
    CHECK(ellcurve_ap(e, p) == ap_count);
}

TEST_CASE("ellcurve_ap rejects additive reduction") {
    std::array<i64, 5> e{0, 0, 0, 0, 3};  // y^2 = x^3 + 3, cusp mod 3
    CHECK_THROWS_AS(ellcurve_ap(e, 3), std::invalid_argument);
}

TEST_CASE("build_table: hecke structure of delta") {
    auto t = catalog_table("delta", 1000);
    CHECK(t->lambda(1) == 1.0);
    CHECK(t->lambda(4) == doctest::Approx(t->lambda(2) * t->lambda(2) - 1.0).epsilon(1e-12));
    CHECK(t->coeff(1) == 1);
}

TEST_CASE("build_table: level-11 lambda at the level prime") {
    auto t = catalog_table("eta11", 1000);
    CHECK(t->coeff(11) == 1);
    CHECK(t->lambda(11) == doctest::Approx(1.0 / std::sqrt(11.0)).epsilon(1e-12));
    // lambda(11^j) = lambda(11)^j
    CHECK(t->lambda(121) == doctest::Approx(1.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("elliptic-source table equals the eta-source table for level 11") {
    const u64 n = 2000;
    auto eta = catalog_table("eta11", n);
    auto ell = catalog_table("ell11", n);
    for (u64 i = 1; i <= n; ++i) CHECK(eta->coeff(i) == ell->coeff(i));
}

TEST_CASE("tau congruence mod 691 against sigma_11") {
    auto t = catalog_table("delta", 2000);
    for (u64 n = 1; n <= 2000; ++n) {
        Bigint lhs = t->coeff(n) % 691;
        Bigint rhs = sigma_k(n, 11) % 691;
        if (lhs < 0) lhs += 691;
        if (rhs < 0) rhs += 691;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("deligne bound holds in exact arithmetic") {
    auto t = catalog_table("delta", 5000);
    t->check_deligne(5000);
    auto g = catalog_table("eta11", 5000);
    g->check_deligne(5000);
    // and the float statement |lambda(n)| <= d(n)
    for (u64 n = 1; n <= 5000; ++n)
        CHECK(std::abs(t->lambda(n)) <= static_cast<double>(divisor_count(n)) + 1e-12);
}

TEST_CASE("hecke bilinear identity") {
    auto t = catalog_table("delta", 10000);
    auto g = catalog_table("eta11", 10000);
    for (const auto& table : {t, g}) {
        for (u64 m = 1; m <= 100; m += 7)
            for (u64 n = 1; n <= 100; n += 5) {
                double lhs = table->lambda(m) * table->lambda(n);
                KahanSum rhs;
                u64 gmn = std::gcd(m, n);
                for (u64 d : divisors(gmn)) {
                    if (std::gcd(d, table->level()) != 1) continue;
                    rhs.add(table->lambda(m * n / (d * d)));
                }
                CHECK(std::abs(lhs - rhs.value()) < 1e-10);
            }
    }
}

TEST_CASE("rankin averages") {
    auto t = catalog_table("delta", 10000);
    CHECK(rankin_average(*t, 1) == doctest::Approx(1.0));
    for (u64 n : {10ull, 100ull, 1000ull})
        CHECK(rankin_average(*t, n) >= 1.0 / static_cast<double>(n));

    // slope of log sum vs log N over dyadic N fitted near 1
    std::vector<double> lx, ly;
    for (u64 n = 625; n <= 10000; n *= 2) {
        lx.push_back(std::log(static_cast<double>(n)));
        ly.push_back(std::log(rankin_average(*t, n) * static_cast<double>(n)));
    }
    double slope = fit_slope(lx, ly);
    CHECK(slope == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("amplifier coefficients") {
    auto g = catalog_table("eta11", 1700);
    AmplifierConfig amp = amplifier_coeffs(*g, 40, 5, 11);
    REQUIRE(!amp.prime_set.empty());
    // primes in [20, 40] coprime to 55: 23, 29, 31, 37
    CHECK(amp.prime_set == std::vector<u64>{23, 29, 31, 37});
    KahanSum ident;
    for (auto& [r, ar] : amp.alpha) ident.add(ar * g->lambda(r));
    CHECK(ident.value() == doctest::Approx(4.0).epsilon(1e-12));
    for (u64 l : amp.prime_set) CHECK(amp.alpha_at(l * l) == -1.0);
    CHECK(amp.alpha_at(2) == 0.0);
    CHECK(amp.alpha_at(23 * 29) == 0.0);
    CHECK_THROWS_AS(amplifier_coeffs(*g, 4, 2 * 3, 5 * 7), std::invalid_argument);
}

TEST_CASE("cache round trip and corruption detection") {
    auto t = catalog_table("eta11", 600);
    EigenvalueTable small = build_table(catalog_form("eta11"), 400);
    std::string path = "cache_test_eta11.txt";
    save_table(small, path);

    EigenvalueTable loaded = load_table(path);
    CHECK(loaded.size() == 400);
    CHECK(loaded.level() == 11);
    CHECK(loaded.weight() == 2);
    for (u64 n = 1; n <= 400; ++n) CHECK(loaded.coeff(n) == t->coeff(n));

    // corrupt one coefficient; the loader must point at the line
    {
        std::ifstream in(path);
        std::string all, line;
        u64 ln = 0;
        while (std::getline(in, line)) {
            ++ln;
            if (ln == 7) line = "6,99999";  // a(6) corrupted
            all += line + "\n";
        }
        std::ofstream out(path);
        out << all;
    }
    try {
        load_table(path);
        FAIL("corrupt cache not detected");
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("line 7") != std::string::npos);
    }
    std::remove(path.c_str());
}
