#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "infconv/catalog.hpp"
#include "infconv/errors.hpp"
#include "infconv/grid.hpp"
#include "infconv/harness.hpp"
#include "infconv/norms.hpp"

using namespace infconv;

namespace {

// Closed form ||exp(-|x|^2)||_p = (pi/p)^(d/(2p)) over R^d.
double gaussian_norm(int d, double p) {
    return std::pow(std::numbers::pi / p, d / (2.0 * p));
}

}  // namespace

TEST_CASE("p exponent validation") {
    CHECK_THROWS_AS(PExponent::finite(0.5), InvalidArgument);
    CHECK_THROWS_AS(PExponent::finite(-1.0), InvalidArgument);
    CHECK(PExponent::finite(2.0).value() == 2.0);
    CHECK(PExponent::infinity().is_infinite());
    CHECK_THROWS_AS(PExponent::infinity().value(), InvalidArgument);
}

TEST_CASE("gaussian norm matches the closed form") {
    // This case also pins the calibration of quadrature_tolerance: the model
    // must cover the observed quadrature error on the recommended grids.
    const GridSpec g1 = make_grid(1, 6.0, 1025);
    for (double p : {1.0, 2.0, 4.0}) {
        const double got = lp_norm(sample(FunctionSpec(Gaussian{}), g1),
                                   PExponent::finite(p));
        const double expected = gaussian_norm(1, p);
        CHECK(std::abs(got - expected) / expected <= 1e-3);
        CHECK(std::abs(got - expected) / expected <= quadrature_tolerance(g1));
    }
    const GridSpec g2 = make_grid(2, 6.0, 257);
    for (double p : {1.0, 2.0, 4.0}) {
        const double got = lp_norm(sample(FunctionSpec(Gaussian{}), g2),
                                   PExponent::finite(p));
        const double expected = gaussian_norm(2, p);
        CHECK(std::abs(got - expected) / expected <= 1e-3);
        CHECK(std::abs(got - expected) / expected <= quadrature_tolerance(g2));
    }
    CHECK(lp_norm(sample(FunctionSpec(Gaussian{}), g1), PExponent::finite(2.0)) ==
          doctest::Approx(1.1195328250485426).epsilon(1e-3));  // (pi/2)^(1/4)
}

TEST_CASE("norm of degenerate inputs") {
    const GridSpec g = make_grid(1, 2.0, 9);
    const GridFunction zero(g, std::vector<double>(9, 0.0));
    CHECK(lp_norm(zero, PExponent::finite(1.0)) == 0.0);
    CHECK(lp_norm(zero, PExponent::finite(3.5)) == 0.0);
    CHECK(lp_norm(zero, PExponent::infinity()) == 0.0);

    const auto indicator = sample(FunctionSpec(IndicatorOrigin{}), g);
    CHECK(lp_norm(indicator, PExponent::finite(1.0)) == kPlusInfinity);
    CHECK(lp_norm(indicator, PExponent::finite(7.0)) == kPlusInfinity);
    CHECK(lp_norm(indicator, PExponent::infinity()) == kPlusInfinity);
}

TEST_CASE("essential supremum") {
    const GridSpec g = make_grid(1, 6.0, 65);
    CHECK(lp_norm(sample(FunctionSpec(Gaussian{}), g), PExponent::infinity()) == 1.0);
    const GridFunction f(g, [&] {
        std::vector<double> v(65, 0.0);
        v[3] = -7.5;
        v[40] = 2.0;
        return v;
    }());
    CHECK(lp_norm(f, PExponent::infinity()) == 7.5);
}

TEST_CASE("large exponents do not overflow") {
    const GridSpec g = make_grid(1, 6.0, 129);
    const auto q = sample(FunctionSpec(Quadratic{1.0}), g);  // peak 36
    const double big = lp_norm(q, PExponent::finite(256.0));
    CHECK(std::isfinite(big));
    // As p grows the norm approaches the sup norm from the measure side.
    CHECK(big > 30.0);
    CHECK(big < 36.0 * std::pow(12.0, 1.0 / 256.0) * 1.01);
}

TEST_CASE("homogeneity of the norm") {
    const GridSpec g = make_grid(1, 4.0, 257);
    const std::vector<FunctionSpec> specs = {FunctionSpec(Gaussian{}),
                                             FunctionSpec(Quadratic{0.7}),
                                             FunctionSpec(Tent{1.3})};
    for (const auto& spec : specs) {
        const auto f = sample(spec, g);
        for (double c : {0.5, 2.0, 10.0}) {
            for (double p : {1.0, 2.0, 4.0}) {
                const double a = lp_norm(scale(f, c), PExponent::finite(p));
                const double b = c * lp_norm(f, PExponent::finite(p));
                CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, b));
            }
        }
    }
}

TEST_CASE("triangle inequality") {
    std::mt19937_64 rng(314159);
    const GridSpec g = make_grid(1, 3.0, 101);
    std::uniform_real_distribution<double> value(-5.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a(101), b(101);
        for (std::size_t i = 0; i < 101; ++i) {
            a[i] = value(rng);
            b[i] = value(rng);
        }
        const GridFunction fa(g, a), fb(g, b);
        for (double p : {1.0, 2.0, 3.0}) {
            const double lhs = lp_norm(add(fa, fb), PExponent::finite(p));
            const double rhs = lp_norm(fa, PExponent::finite(p)) +
                               lp_norm(fb, PExponent::finite(p));
            CHECK(lhs <= rhs + 1e-12 * std::max(1.0, rhs));
        }
    }
}

TEST_CASE("norm is continuous along an exponent grid") {
    const GridSpec g = make_grid(1, 6.0, 257);
    const auto f = sample(FunctionSpec(Gaussian{}), g);
    double prev = lp_norm(f, PExponent::finite(1.0));
    for (int k = 1; k <= 40; ++k) {
        const double p = 1.0 + 0.1 * k;
        const double cur = lp_norm(f, PExponent::finite(p));
        CHECK(std::abs(cur - prev) <= 0.2);  // no jumps along the grid
        prev = cur;
    }
}

TEST_CASE("quadrature error shrinks at second order") {
    // The tent has a kink, so the midpoint error is genuinely O(h^2).
    const FunctionSpec tent(Tent{2.0});
    const PExponent p = PExponent::finite(2.0);
    const double n0 = lp_norm(sample(tent, make_grid(1, 6.0, 129)), p);
    const double n1 = lp_norm(sample(tent, make_grid(1, 6.0, 257)), p);
    const double n2 = lp_norm(sample(tent, make_grid(1, 6.0, 513)), p);
    const double d1 = std::abs(n1 - n0);
    const double d2 = std::abs(n2 - n1);
    CHECK(d2 <= d1 / 3.5 + 1e-13);

    const FunctionSpec gauss{Gaussian{}};
    const double g1 = lp_norm(sample(gauss, make_grid(1, 6.0, 257)), p);
    const double g2 = lp_norm(sample(gauss, make_grid(1, 6.0, 513)), p);
    CHECK(std::abs(g2 - g1) <= 1e-12);  // smooth case: already converged
}

TEST_CASE("dilation identity is exact on matched grids") {
    SUBCASE("identity dilation") {
        const auto r = dilation_norm_identity_check(
            FunctionSpec(Gaussian{}), 1.0, PExponent::finite(2.0), make_grid(1, 6.0, 129));
        CHECK(r.rel_gap == 0.0);
    }
    SUBCASE("gaussian, lambda 2, p 2") {
        const GridSpec g = make_grid(1, 6.0, 1025);
        const auto r = dilation_norm_identity_check(FunctionSpec(Gaussian{}), 2.0,
                                                    PExponent::finite(2.0), g);
        CHECK(r.rel_gap <= 1e-12);
        // rhs = 2^{-1/2} ||G||_2 with the closed-form Gaussian norm.
        CHECK(r.rhs == doctest::Approx(gaussian_norm(1, 2.0) / std::sqrt(2.0))
                           .epsilon(1e-3));
    }
    SUBCASE("truncated quadratic, lambda 3, d 2, p 1") {
        const GridSpec g = make_grid(2, 2.0, 65);
        const auto r = dilation_norm_identity_check(
            FunctionSpec(TruncatedQuadratic{1.0, 9.0}), 3.0, PExponent::finite(1.0), g);
        CHECK(r.rel_gap <= 1e-12);
    }
    SUBCASE("norm ratio under shrinking dilation") {
        // ||f(x/2)||_2 / ||f||_2 = 2^{1/2} by the closed-form Gaussian integral.
        const GridSpec wide = make_grid(1, 12.0, 2049);
        const GridSpec base = make_grid(1, 12.0, 2049);
        const double dil =
            lp_norm(dilate(FunctionSpec(Gaussian{}), 0.5, wide), PExponent::finite(2.0));
        const double plain =
            lp_norm(sample(FunctionSpec(Gaussian{}), base), PExponent::finite(2.0));
        CHECK(dil / plain == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
    }
    SUBCASE("infinite norms are rejected") {
        // R < L leaves +inf samples inside the box.
        const GridSpec g = make_grid(1, 6.0, 65);
        CHECK_THROWS_AS(
            dilation_norm_identity_check(FunctionSpec(TruncatedQuadratic{1.0, 3.0}),
                                         2.0, PExponent::finite(2.0), g),
            IdentityNotApplicable);
    }
}

TEST_CASE("tail function") {
    const GridSpec g = make_grid(1, 6.0, 1025);
    const double h = g.spacing();
    const auto gauss = sample(FunctionSpec(Gaussian{}), g);
    CHECK(tail_function(gauss, 1.0) == h);  // only the origin reaches 1
    CHECK(tail_function(gauss, 2.0) == 0.0);
    CHECK_THROWS_AS(tail_function(gauss, 0.5), InvalidArgument);

    // mes{|x^2| >= 4} on [-6, 6] is 8; closed threshold adds at most 2h.
    const auto quad = sample(FunctionSpec(Quadratic{1.0}), g);
    CHECK(std::abs(tail_function(quad, 4.0) - 8.0) <= 2.0 * h);

    // +inf samples always count.
    const auto ind = sample(FunctionSpec(IndicatorOrigin{}), g);
    CHECK(tail_function(ind, 1000.0) == doctest::Approx(1024.0 * h).epsilon(1e-12));
}

TEST_CASE("tail function is non-increasing in the threshold") {
    const GridSpec g = make_grid(1, 4.0, 257);
    const auto f = sample(FunctionSpec(Quadratic{0.9}), g);
    double prev = tail_function(f, 1.0);
    for (double u = 1.5; u <= 16.0; u += 0.5) {
        const double cur = tail_function(f, u);
        CHECK(cur <= prev);
        prev = cur;
    }
}

TEST_CASE("subgaussian fit") {
    const GridSpec g = make_grid(1, 6.0, 1025);
    SUBCASE("zero function is vacuously subgaussian") {
        const GridFunction zero(g, std::vector<double>(1025, 0.0));
        const auto report = subgaussian_fit(zero, 2.0, std::vector<double>{1.0, 2.0});
        CHECK(report.vacuous);
        CHECK(!report.fitted_c.has_value());
    }
    SUBCASE("gaussian has a positive fitted constant") {
        const auto f = sample(FunctionSpec(Gaussian{}), g);
        const auto report = subgaussian_fit(f, 2.0, std::vector<double>{1.0});
        REQUIRE(report.fitted_c.has_value());
        CHECK(*report.fitted_c > 0.0);
        // Direct count oracle: T(1) = h, so C = -ln(h).
        CHECK(*report.fitted_c ==
              doctest::Approx(-std::log(g.spacing())).epsilon(1e-12));
    }
    SUBCASE("tent tail at the apex") {
        const auto f = sample(FunctionSpec(Tent{2.0}), g);
        const auto report =
            subgaussian_fit(f, 1.0, std::vector<double>{1.0, 1.5, 2.0});
        CHECK(report.tail_values[0] == g.spacing());  // apex node only
        CHECK(report.tail_values[1] == 0.0);
        REQUIRE(report.fitted_c.has_value());
        CHECK(std::isfinite(*report.fitted_c));
    }
    SUBCASE("fitted constant satisfies the bound at every threshold") {
        const auto f = sample(FunctionSpec(ScaledGaussian{0.4}), g);
        const std::vector<double> us = {1.0, 1.2, 1.5, 2.0, 4.0};
        const auto report = subgaussian_fit(f, 2.0, us);
        if (report.fitted_c) {
            for (std::size_t i = 0; i < us.size(); ++i)
                CHECK(report.tail_values[i] <=
                      std::exp(-*report.fitted_c * std::pow(us[i], 2.0)) + 1e-15);
        }
    }
    SUBCASE("threshold validation") {
        const auto f = sample(FunctionSpec(Gaussian{}), g);
        CHECK_THROWS_AS(subgaussian_fit(f, 2.0, std::vector<double>{0.5, 2.0}),
                        InvalidArgument);
        CHECK_THROWS_AS(subgaussian_fit(f, 2.0, std::vector<double>{2.0, 1.5}),
                        InvalidArgument);
        CHECK_THROWS_AS(subgaussian_fit(f, -1.0, std::vector<double>{1.0}),
                        InvalidArgument);
    }
}
