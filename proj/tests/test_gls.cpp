#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "infconv/catalog.hpp"
#include "infconv/errors.hpp"
#include "infconv/gls.hpp"
#include "infconv/grid.hpp"

using namespace infconv;

namespace {

// Calculus oracle for the power-law fundamental function: candidates are the
// lower endpoint and the interior stationary point p* = s ln(1/delta).
double power_fundamental_oracle(double s, double delta) {
    auto objective = [&](double p) {
        return std::pow(delta, 1.0 / p) / std::pow(p, 1.0 / s);
    };
    double best = objective(1.0);
    if (delta < 1.0) {
        const double p_star = s * std::log(1.0 / delta);
        if (p_star >= 1.0) best = std::max(best, objective(p_star));
    }
    return best;
}

}  // namespace

TEST_CASE("generating function evaluation") {
    const auto power = GeneratingFunction::power(2.0);
    CHECK(power.value(4.0) == 2.0);
    CHECK(power.value(1.0) == 1.0);
    CHECK(power.value(0.5) == kPlusInfinity);  // below the domain

    const auto degenerate = GeneratingFunction::degenerate(3.0);
    CHECK(degenerate.value(3.0) == 1.0);
    CHECK(degenerate.value(2.0) == kPlusInfinity);
    CHECK(degenerate.value(3.0000001) == kPlusInfinity);

    const auto one = GeneratingFunction::constant_one();
    CHECK(one.value(17.0) == 1.0);

    const auto ratio = GeneratingFunction::ratio(GeneratingFunction::power(1.0),
                                                 GeneratingFunction::constant_one());
    CHECK(ratio.value(5.0) == 5.0);

    const auto tab = GeneratingFunction::tabulated({1.0, 2.0, 4.0}, {1.0, 3.0, 5.0});
    CHECK(tab.value(1.0) == 1.0);
    CHECK(tab.value(3.0) == 4.0);  // linear between (2,3) and (4,5)
    CHECK(tab.value(8.0) == kPlusInfinity);
}

TEST_CASE("generating function validation") {
    CHECK_THROWS_AS(GeneratingFunction::power(0.0), InvalidGeneratingFunction);
    CHECK_THROWS_AS(GeneratingFunction::degenerate(0.5), InvalidGeneratingFunction);
    CHECK_THROWS_AS(GeneratingFunction::constant_one(0.5, 2.0),
                    InvalidGeneratingFunction);
    CHECK_THROWS_AS(GeneratingFunction::constant_one(3.0, 2.0),
                    InvalidGeneratingFunction);
    CHECK_THROWS_AS(GeneratingFunction::ratio(GeneratingFunction::degenerate(2.0),
                                              GeneratingFunction::degenerate(3.0)),
                    InvalidGeneratingFunction);  // disjoint domains
    CHECK_THROWS_AS(GeneratingFunction::tabulated({1.0, 2.0}, {1.0, -1.0}),
                    InvalidGeneratingFunction);
    CHECK_THROWS_AS(GeneratingFunction::tabulated({2.0, 1.0}, {1.0, 1.0}),
                    InvalidGeneratingFunction);
}

TEST_CASE("generating function parsing") {
    CHECK(parse_generating_function("power:s=2").value(4.0) == 2.0);
    CHECK(parse_generating_function("degenerate:r=3").degenerate_point() == 3.0);
    CHECK(parse_generating_function("one").value(9.0) == 1.0);
    const auto bounded = parse_generating_function("one:a=2,b=8");
    CHECK(bounded.value(1.5) == kPlusInfinity);
    CHECK(bounded.value(5.0) == 1.0);
    CHECK(parse_generating_function("one:a=1,b=inf").upper() == kPlusInfinity);
    CHECK(parse_generating_function("ratio:num=power:s=1,den=one").value(5.0) == 5.0);

    CHECK_THROWS_AS(parse_generating_function("poly:s=2"), ParseError);
    CHECK_THROWS_AS(parse_generating_function("power:s=abc"), ParseError);
    CHECK_THROWS_AS(parse_generating_function("ratio:num=power:s=1"), ParseError);
    CHECK_THROWS_AS(
        parse_generating_function("ratio:num=ratio:num=one,den=one,den=one"),
        ParseError);
}

TEST_CASE("p sampling") {
    const PSampling lin(1.0, 5.0, 5, PSampling::Spacing::Linear);
    const auto pts = lin.points();
    REQUIRE(pts.size() == 5);
    CHECK(pts[0] == 1.0);
    CHECK(pts[2] == 3.0);
    CHECK(pts[4] == 5.0);

    const PSampling log(1.0, 64.0, 7, PSampling::Spacing::Log);
    const auto lpts = log.points();
    CHECK(lpts.front() == 1.0);
    CHECK(lpts.back() == 64.0);
    CHECK(lpts[3] == doctest::Approx(8.0).epsilon(1e-12));

    CHECK_THROWS_AS(PSampling(0.5, 2.0, 3, PSampling::Spacing::Linear),
                    InvalidArgument);
    CHECK_THROWS_AS(PSampling(2.0, 1.0, 3, PSampling::Spacing::Linear),
                    InvalidArgument);
    CHECK_THROWS_AS(PSampling(1.0, 2.0, 1, PSampling::Spacing::Linear),
                    InvalidArgument);
    CHECK_THROWS_AS(PSampling::default_for(GeneratingFunction::degenerate(2.0)),
                    InvalidArgument);
    const auto def = PSampling::default_for(GeneratingFunction::power(2.0));
    CHECK(def.p_min() == 1.0);
    CHECK(def.p_max() == kExponentCap);
    CHECK(def.count() == 33);
}

TEST_CASE("degenerate gls norm reduces to the single-exponent norm exactly") {
    const GridSpec g = make_grid(1, 6.0, 257);
    const PSampling sampling(1.0, 8.0, 9, PSampling::Spacing::Linear);
    const std::vector<FunctionSpec> specs = {
        FunctionSpec(Gaussian{}),        FunctionSpec(ScaledGaussian{2.0}),
        FunctionSpec(Quadratic{1.0}),    FunctionSpec(Tent{2.0}),
        FunctionSpec(IndicatorOrigin{}), FunctionSpec(TruncatedQuadratic{1.0, 7.0})};
    for (double r : {1.5, 2.0, 3.0}) {
        const auto gf = GeneratingFunction::degenerate(r);
        for (const auto& spec : specs) {
            const auto f = sample(spec, g);
            const auto res = gls_norm(f, gf, sampling);
            CHECK(res.value == lp_norm(f, PExponent::finite(r)));  // bitwise
            CHECK(res.achieved_p == r);
        }
    }
}

TEST_CASE("gls norm of the gaussian against a sampled closed-form oracle") {
    const GridSpec g = make_grid(1, 6.0, 1025);
    const auto f = sample(FunctionSpec(Gaussian{}), g);
    const PSampling sampling(1.0, 64.0, 33, PSampling::Spacing::Log);
    const auto res = gls_norm(f, GeneratingFunction::power(2.0), sampling);

    double expected = 0.0;
    double expected_p = 0.0;
    for (double p : sampling.points()) {
        const double closed = std::pow(std::numbers::pi / p, 1.0 / (2.0 * p));
        const double ratio = closed / std::pow(p, 0.5);
        if (ratio > expected) {
            expected = ratio;
            expected_p = p;
        }
    }
    CHECK(res.value == doctest::Approx(expected).epsilon(1e-3));
    CHECK(res.achieved_p == expected_p);
    CHECK(res.achieved_p == 1.0);  // decreasing norm, increasing psi
}

TEST_CASE("gls norm edge cases") {
    const GridSpec g = make_grid(1, 2.0, 17);
    const GridFunction zero(g, std::vector<double>(17, 0.0));
    const PSampling sampling(1.0, 16.0, 9, PSampling::Spacing::Log);
    CHECK(gls_norm(zero, GeneratingFunction::power(2.0), sampling).value == 0.0);

    // Sampling entirely outside the domain: every psi value is infinite.
    const auto narrow = GeneratingFunction::constant_one(20.0, 30.0);
    const auto f = sample(FunctionSpec(Gaussian{}), g);
    CHECK_THROWS_AS(gls_norm(f, narrow, sampling), EmptyDomain);

    // Homogeneity.
    for (double c : {0.5, 2.0}) {
        const auto a = gls_norm(scale(f, c), GeneratingFunction::power(2.0), sampling);
        const auto b = gls_norm(f, GeneratingFunction::power(2.0), sampling);
        CHECK(std::abs(a.value - c * b.value) <= 1e-12 * std::max(1.0, c * b.value));
    }

    // Discrete sup: refining a nested sampling never decreases the value.
    const PSampling coarse(1.0, 65.0, 5, PSampling::Spacing::Linear);
    const PSampling fine(1.0, 65.0, 9, PSampling::Spacing::Linear);  // superset
    const auto cv = gls_norm(f, GeneratingFunction::power(2.0), coarse);
    const auto fv = gls_norm(f, GeneratingFunction::power(2.0), fine);
    CHECK(fv.value >= cv.value);
}

TEST_CASE("fundamental function closed forms") {
    SUBCASE("degenerate") {
        CHECK(fundamental_function(GeneratingFunction::degenerate(2.0), 8.0) ==
              doctest::Approx(2.8284271247461903).epsilon(1e-12));
        CHECK(fundamental_function(GeneratingFunction::degenerate(3.0), 0.0) == 0.0);
    }
    SUBCASE("constant one") {
        const auto one = GeneratingFunction::constant_one();
        for (double delta : {1.0, 4.0, 8.0, 27.0, 125.0})
            CHECK(fundamental_function(one, delta) == doctest::Approx(delta).epsilon(1e-12));
        CHECK(fundamental_function(one, 0.25) == 1.0);  // b = inf limit
        const auto band = GeneratingFunction::constant_one(2.0, 4.0);
        CHECK(fundamental_function(band, 16.0) == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(fundamental_function(band, 0.0625) ==
              doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("power law against the calculus oracle") {
        CHECK(fundamental_function(GeneratingFunction::power(1.0), std::exp(-1.0)) ==
              doctest::Approx(0.36787944117144233).epsilon(1e-6));
        for (double s : {0.5, 1.0, 2.0}) {
            const auto gf = GeneratingFunction::power(s);
            for (int k = 0; k < 20; ++k) {
                const double delta = std::exp(1.0 - 0.6 * k);  // spans both regimes
                const double got = fundamental_function(gf, delta);
                const double expected = power_fundamental_oracle(s, delta);
                CHECK(std::abs(got - expected) / expected <= 1e-6);
            }
        }
    }
    SUBCASE("generic maximizer agrees with the special cases") {
        // A tabulated constant-one curve runs through the generic search.
        const auto flat = GeneratingFunction::tabulated(
            {1.0, 2.0, 4.0, 16.0, 64.0, 256.0}, {1.0, 1.0, 1.0, 1.0, 1.0, 1.0});
        for (double delta : {1.0, 9.0, 64.0}) {
            const double generic = fundamental_function(flat, delta);
            const double closed =
                fundamental_function(GeneratingFunction::constant_one(), delta);
            CHECK(std::abs(generic - closed) / closed <= 1e-9);
        }
        // A tabulated power curve against the power generic path.
        std::vector<double> ps, vals;
        for (int i = 0; i <= 400; ++i) {
            const double p = 1.0 + i * (255.0 / 400.0);
            ps.push_back(p);
            vals.push_back(std::sqrt(p));
        }
        const auto tab_power = GeneratingFunction::tabulated(ps, vals);
        const double got = fundamental_function(tab_power, 0.125);
        const double expected = fundamental_function(GeneratingFunction::power(2.0), 0.125);
        CHECK(std::abs(got - expected) / expected <= 3e-3);  // interpolation error
    }
}

TEST_CASE("fundamental function properties") {
    const auto gf = GeneratingFunction::power(2.0);
    CHECK(fundamental_function(gf, 0.0) == 0.0);
    double prev = 0.0;
    for (double delta : {0.01, 0.1, 0.5, 1.0, 2.0, 8.0, 100.0}) {
        const double cur = fundamental_function(gf, delta);
        CHECK(cur >= prev);
        prev = cur;
    }
    // phi(1) = sup 1/psi <= 1/inf psi; for the power law psi(1) = 1 attains it.
    CHECK(fundamental_function(gf, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(fundamental_function(gf, -1.0), InvalidArgument);
}

TEST_CASE("factorization") {
    SUBCASE("trivial strategy") {
        const auto psi = GeneratingFunction::power(2.0);
        const auto [nu, zeta] = factorize(psi, TrivialFactorization{});
        CHECK(nu.to_string() == psi.to_string());
        CHECK(zeta.is_constant_one());
        CHECK(zeta.lower() == 1.0);
        for (double p : {1.0, 2.0, 7.0, 100.0})
            CHECK(nu.value(p) / zeta.value(p) == psi.value(p));
    }
    SUBCASE("valid given pair: p / p^(1/2) = p^(1/2)") {
        const auto psi = GeneratingFunction::power(2.0);
        const GivenFactorization given{GeneratingFunction::power(1.0),
                                       GeneratingFunction::power(2.0)};
        const auto [nu, zeta] = factorize(psi, FactorStrategy{given});
        CHECK(nu.to_string() == "power:s=1");
        CHECK(zeta.to_string() == "power:s=2");
    }
    SUBCASE("mismatched pair is rejected") {
        const auto psi = GeneratingFunction::power(2.0);
        const GivenFactorization wrong{GeneratingFunction::power(1.0),
                                       GeneratingFunction::power(3.0)};
        CHECK_THROWS_AS(factorize(psi, FactorStrategy{wrong}), NotAFactorization);
    }
    SUBCASE("degenerate self-factorization") {
        const auto psi = GeneratingFunction::degenerate(2.0);
        const GivenFactorization given{GeneratingFunction::degenerate(2.0),
                                       GeneratingFunction::degenerate(2.0)};
        const auto [nu, zeta] = factorize(psi, FactorStrategy{given});
        CHECK(nu.is_degenerate());
        CHECK(fundamental_function(zeta, 4.0) == 2.0);
    }
    SUBCASE("domain containment is required") {
        const auto psi = GeneratingFunction::power(2.0);  // domain [1, inf)
        const GivenFactorization narrow{GeneratingFunction::constant_one(1.0, 4.0),
                                        GeneratingFunction::constant_one(1.0, 4.0)};
        CHECK_THROWS_AS(factorize(psi, FactorStrategy{narrow}), NotAFactorization);
    }
}
