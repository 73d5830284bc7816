#pragma once

#include <array>
#include <string>
#include <variant>

#include "infconv/grid.hpp"

namespace infconv {

// Analytic function catalog. All members are nonnegative, radial (even), and
// evaluable at any point of R^d. Textual forms accepted by the CLI:
//   gaussian                exp(-|x|^2)
//   gaussian:c=2            exp(-c|x|^2)
//   quadratic:c=1           c|x|^2
//   tent:R=2                max(0, 1 - |x|/R)
//   indicator-origin        0 at the origin, +inf elsewhere
//   trunc-quadratic:c=1,R=3 c|x|^2 for |x| <= R, +inf outside

struct Gaussian {};
struct ScaledGaussian {
    double c;  // > 0
};
struct Quadratic {
    double c;  // >= 0
};
struct Tent {
    double radius;  // > 0
};
struct IndicatorOrigin {};
struct TruncatedQuadratic {
    double c;       // > 0
    double radius;  // > 0
};

class FunctionSpec {
public:
    using Variant = std::variant<Gaussian, ScaledGaussian, Quadratic, Tent,
                                 IndicatorOrigin, TruncatedQuadratic>;

    FunctionSpec(Variant v);  // validates parameters

    const Variant& variant() const { return v_; }

    /// Value at a point of R^d; the first `dimension` entries of `p` are used.
    ExtReal evaluate(const std::array<double, 3>& p, int dimension) const;

    /// Additively separable across coordinates (value = sum of per-axis
    /// profiles). True for Quadratic and IndicatorOrigin.
    bool is_separable() const;

    /// One-axis profile of a separable spec, evaluated at t.
    double axis_profile(double t) const;

    /// Worst-case slope magnitude over [-bound, bound]^d, +inf when the spec
    /// has a jump (IndicatorOrigin, TruncatedQuadratic boundary).
    double lipschitz_bound(double bound, int dimension) const;

    std::string to_string() const;

private:
    Variant v_;
};

/// Parse the CLI textual form. Throws ParseError on malformed input.
FunctionSpec parse_function_spec(const std::string& text);

/// Evaluate the spec at every grid node. Throws DegenerateFunction if no node
/// receives a finite value.
GridFunction sample(const FunctionSpec& spec, const GridSpec& grid);

/// Samples of x -> spec(lambda * x), evaluated analytically from the catalog.
GridFunction dilate(const FunctionSpec& spec, double lambda, const GridSpec& grid);

}  // namespace infconv
