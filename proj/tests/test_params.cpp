#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kcnf/params.hpp"
#include "kcnf/errors.hpp"
#include "kcnf/separator.hpp"

using namespace kcnf;

TEST_CASE("profile eta at k=4 is 7.5 and flagged outside theory range") {
    Params p = derive_params(4, 100, 100, 0.05, 1.0);
    CHECK(p.eta == Rational(15, 2));
    CHECK(!p.eta_in_theory);
}

TEST_CASE("profile D at k=2^20, alpha=1, xi=1 is exactly 2*k^8") {
    Params p = derive_params(1u << 20, 1u << 20, 1u << 20, 0.05, 1.0);
    CHECK(p.degree_threshold == std::ldexp(1.0, 161));  // (2^20)^8 * 2
}

TEST_CASE("regime boundaries") {
    // small error: eps <= exp(-n / 2^{k/2})
    {
        std::uint32_t k = 3;
        std::uint64_t n = 16;
        double boundary = std::exp(-static_cast<double>(n) / std::pow(2.0, k / 2.0));
        Params below = derive_params(k, n, 32, boundary * 0.99, 1.0);
        CHECK(below.regime == Regime::SmallError);
        Params above = derive_params(k, n, 32, boundary * 1.01, 1.0);
        CHECK(above.regime == Regime::Typical);
    }
    // small density: alpha <= 1/k^3, checked exactly at the boundary
    {
        std::uint32_t k = 3;  // 1/27
        Params at = derive_params(k, 27, 1, 0.05, 1.0);
        CHECK(at.regime == Regime::SmallDensity);
        Params above = derive_params(k, 26, 1, 0.05, 1.0);
        CHECK(above.regime == Regime::Typical);
        // small_error takes precedence when both hold
        double tiny_eps = std::exp(-27.0 / std::pow(2.0, 1.5)) * 0.5;
        Params both = derive_params(k, 27, 1, tiny_eps, 1.0);
        CHECK(both.regime == Regime::SmallError);
    }
}

TEST_CASE("xi slack validation") {
    CHECK_THROWS_AS(static_cast<void>(derive_params(8, 10, 10, 0.05, 1.5)), Error);
    CHECK_THROWS_AS(static_cast<void>(derive_params(8, 10, 10, 0.05, 0.4)), Error);  // < 2^-1
    CHECK_NOTHROW(static_cast<void>(derive_params(8, 10, 10, 0.05, 0.6)));
}

TEST_CASE("s profile formula") {
    // s = ceil(6 k^4 alpha log2(n/eps))
    Params p = derive_params(2, 1024, 512, 0.5, 1.0);
    double expect = std::ceil(6.0 * 16.0 * 0.5 * std::log2(1024.0 / 0.5));
    CHECK(p.s == static_cast<std::uint64_t>(expect));
    CHECK(!p.s_infinite);
}

TEST_CASE("overrides are applied last and recorded") {
    ParamOverrides ov;
    ov.eta = Rational(1, 12);
    ov.delta = Rational(1, 4);
    ov.s_infinite = true;
    ov.degree_threshold = 123.0;
    Params p = derive_params(3, 30, 60, 0.05, 1.0, ov);
    CHECK(p.eta == Rational(1, 12));
    CHECK(p.eta_overridden);
    CHECK(p.delta == Rational(1, 4));
    CHECK(p.delta_overridden);
    CHECK(p.s_infinite);
    CHECK(p.degree_threshold == 123.0);
    CHECK(p.degree_threshold_overridden);
}

TEST_CASE("delta profile underflows at desk scale without an override") {
    Params p = derive_params(5, 100, 200, 0.05, 1.0);  // xi/(k^40 alpha) ~ 1e-28
    CHECK(p.delta_underflowed);
    CHECK(!p.delta.positive());
}

TEST_CASE("integer threshold ladder from eta") {
    // k=3, eta=1/12: T = 1.5 -> floor 2; eta=1/6: T = 1 -> floor 1
    CHECK(live_floor_from_eta(Rational(1, 12), 3) == 2);
    CHECK(live_floor_from_eta(Rational(1, 6), 3) == 1);
    // T integral: comparisons stay exact
    CHECK(live_floor_from_eta(Rational(1, 6), 6) == 2);
    // negative T clamps freezing off
    CHECK(live_floor_from_eta(Rational(1, 2), 3) < 0);
    // separator overlap threshold ceil(2 eta k)
    CHECK(sep_overlap_threshold(Rational(1, 3), 3) == 2);
    CHECK(sep_overlap_threshold(Rational(15, 2) / Rational(4), 4) == 15);  // eta=15/8 at k=4... ceil(15) = 15
}
