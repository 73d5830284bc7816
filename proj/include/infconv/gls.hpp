#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "infconv/grid.hpp"
#include "infconv/norms.hpp"

namespace infconv {

/// Upper sampling limit used when a generating function is finite on an
/// unbounded exponent range. On a finite-measure truncated box the norm
/// ratio tail beyond this point is negligible for the shipped variants.
inline constexpr double kExponentCap = 256.0;

/// Generating function psi: [a, b] -> (0, +inf], positive with inf > 0 over
/// its finite values, +inf outside the domain. Variants and CLI forms:
///   power:s=2       p^(1/s) on [1, inf)
///   degenerate:r=3  1 at p = r (exact comparison), +inf elsewhere
///   one:a=1,b=inf   constant 1 on [a, b]
///   ratio:num=...,den=...   num(p)/den(p) on the intersected domain
/// Tabulated data (piecewise-linear) is available programmatically.
class GeneratingFunction {
public:
    static GeneratingFunction power(double s);
    static GeneratingFunction degenerate(double r);
    static GeneratingFunction constant_one(double a = 1.0, double b = kPlusInfinity);
    static GeneratingFunction ratio(GeneratingFunction num, GeneratingFunction den);
    static GeneratingFunction tabulated(std::vector<double> exponents,
                                        std::vector<double> values);

    double lower() const { return a_; }
    double upper() const { return b_; }  // +inf allowed

    /// psi(p); +inf outside [a, b]. Throws IndeterminateGeneratingValue when
    /// a ratio evaluates to 0/0 or inf/inf.
    double value(double p) const;

    bool is_degenerate() const;
    double degenerate_point() const;
    bool is_constant_one() const;

    std::string to_string() const;

private:
    struct PowerLaw {
        double s;
    };
    struct PointMass {
        double r;
    };
    struct Unit {};
    struct Quotient {
        std::shared_ptr<GeneratingFunction> num;
        std::shared_ptr<GeneratingFunction> den;
    };
    struct Table {
        std::vector<double> exponents;
        std::vector<double> values;
    };
    using Variant = std::variant<PowerLaw, PointMass, Unit, Quotient, Table>;

    GeneratingFunction(Variant v, double a, double b);

    Variant v_;
    double a_;
    double b_;
};

GeneratingFunction parse_generating_function(const std::string& text);

/// Discretization of the exponent range for the sup in the GLS norm.
class PSampling {
public:
    enum class Spacing { Linear, Log };

    PSampling(double p_min, double p_max, int count, Spacing spacing);

    /// [a, min(b, cap)], 33 log-spaced points. Not defined for degenerate
    /// generating functions (they have a single effective exponent).
    static PSampling default_for(const GeneratingFunction& gf);

    std::vector<double> points() const;
    double p_min() const { return p_min_; }
    double p_max() const { return p_max_; }
    int count() const { return count_; }
    Spacing spacing() const { return spacing_; }

private:
    double p_min_;
    double p_max_;
    int count_;
    Spacing spacing_;
};

struct GlsNormResult {
    double value = 0.0;       // may be +inf
    double achieved_p = 0.0;  // sampled exponent attaining the max
};

/// sup over sampled p of ||f||_p / psi(p), with c/inf := 0. A lower bound on
/// the true supremum; the achieving exponent is reported so the sampling is
/// auditable. Degenerate psi reduces exactly to the single-point norm.
GlsNormResult gls_norm(const GridFunction& f, const GeneratingFunction& gf,
                       const PSampling& sampling);

/// sup over the domain of delta^(1/p) / psi(p). Closed forms for the
/// degenerate and constant-one variants; log-grid search refined by
/// golden-section maximization otherwise. delta = 0 returns 0.
double fundamental_function(const GeneratingFunction& gf, double delta);

struct TrivialFactorization {};
struct GivenFactorization {
    GeneratingFunction num;
    GeneratingFunction den;
};
using FactorStrategy = std::variant<TrivialFactorization, GivenFactorization>;

/// Splits psi as num/den. The trivial strategy returns (psi, one on [1,inf)).
/// A given pair is verified pointwise on a probe exponent grid within 1e-12
/// and rejected with NotAFactorization otherwise.
std::pair<GeneratingFunction, GeneratingFunction> factorize(
    const GeneratingFunction& gf, const FactorStrategy& strategy);

}  // namespace infconv
