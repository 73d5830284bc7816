#pragma once

#include <optional>
#include <span>
#include <vector>

#include "infconv/catalog.hpp"
#include "infconv/grid.hpp"

namespace infconv {

/// Integrability exponent p in [1, inf], with inf as an explicit variant.
class PExponent {
public:
    static PExponent finite(double p);
    static PExponent infinity() { return PExponent(true, 0.0); }

    bool is_infinite() const { return infinite_; }
    double value() const;  // finite variant only

    friend bool operator==(const PExponent& a, const PExponent& b) {
        return a.infinite_ == b.infinite_ && a.p_ == b.p_;
    }

private:
    PExponent(bool inf, double p) : infinite_(inf), p_(p) {}
    bool infinite_;
    double p_;
};

/// Uniform-weight quadrature norm: [sum_i h^d |f_i|^p]^(1/p) for finite p
/// (any +inf sample makes it +inf), discrete essential supremum for p = inf.
/// The sum uses deterministic pairwise summation, so the result does not
/// depend on the parallel partitioning of the term evaluation.
double lp_norm(const GridFunction& f, const PExponent& p);

struct DilationIdentityReport {
    double lambda = 0.0;
    double lhs = 0.0;      // ||f(lambda .)||_p on the base grid
    double rhs = 0.0;      // lambda^(-d/p) ||f||_p on the matched grid [-lambda L, lambda L]
    double rel_gap = 0.0;  // |lhs - rhs| / rhs
};

/// Checks ||f(lambda .)||_p = lambda^(-d/p) ||f||_p with the right-hand norm
/// computed on the matched grid (half-width scaled by lambda, same n), where
/// the substitution is exact at quadrature level.
DilationIdentityReport dilation_norm_identity_check(const FunctionSpec& spec,
                                                    double lambda,
                                                    const PExponent& p,
                                                    const GridSpec& grid);

/// h^d * count of nodes with |f_i| >= u (+inf samples always count).
double tail_function(const GridFunction& f, double u);

struct TailReport {
    std::vector<double> u_grid;
    std::vector<double> tail_values;
    double s = 0.0;
    std::optional<double> fitted_c;  // absent when every tail value is zero
    bool vacuous = false;            // all tails zero: any constant works
};

/// Empirical one-directional tail fit: the largest C with
/// tail(u) <= exp(-C u^s) across the sampled thresholds.
TailReport subgaussian_fit(const GridFunction& f, double s, std::span<const double> u_grid);

}  // namespace infconv
