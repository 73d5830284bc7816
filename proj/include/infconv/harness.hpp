#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infconv/catalog.hpp"
#include "infconv/convolution.hpp"
#include "infconv/gls.hpp"
#include "infconv/grid.hpp"
#include "infconv/norms.hpp"

namespace infconv {

/// Which convolution engine a harness run uses. The brute-force engines are
/// the reference; the separable path must be requested explicitly and only
/// accepts additively separable specs.
enum class Engine { Reference, Parallel, Separable };

/// Discrete-verification error budget for norm-ratio checks on a grid:
/// max(1e-10, C_q * n^-2 + C_t * boundary mass). C_q and C_t are calibrated
/// against the closed-form Gaussian norm (see the norm tests).
double quadrature_tolerance(const GridSpec& grid);

struct SharpnessReport {
    int d = 0;
    int m = 0;
    PExponent p = PExponent::finite(1.0);
    double lhs = 0.0;              // ||fold of f_j||_p
    double rhs_sum = 0.0;          // sum_j ||f_j||_p
    double ratio = 0.0;            // lhs / rhs_sum
    double bound = 0.0;            // m^(d/p)
    double rel_gap = 0.0;          // (bound - ratio) / bound
    double surrogate_ratio = 0.0;  // ||sum_j f_j(./m)||_p / sum_j ||f_j||_p, matched grids
    double tolerance = 0.0;
    bool upper_bound_ok = false;   // ratio <= bound (1 + tolerance)
    bool surrogate_ok = false;     // surrogate_ratio matches bound (identical copies)
    bool hilbert_case = false;     // p == 2
    double extremal_gap = 0.0;     // surrogate_ratio - ratio
    std::string audit_note;
    std::vector<std::string> specs;
    int grid_n = 0;
    double grid_half_width = 0.0;
};

/// Norm-ratio measurement for the m-term min-plus fold: fills all report
/// fields and checks the ratio against m^(d/p). Throws OutsideSupremumDomain
/// when sum_j ||f_j||_p is zero or infinite (the ratio is only defined on
/// finite positive denominators).
SharpnessReport empirical_ratio(std::span<const FunctionSpec> specs, const PExponent& p,
                                const GridSpec& grid, Engine engine = Engine::Parallel);

/// The ratio ||sum_j f_j(./m)||_p / sum_j ||f_j||_p with the denominator
/// norms computed on the matched grid of half-width L/m, where the dilation
/// substitution is exact at quadrature level. For identical copies this
/// equals m^(d/p) up to rounding.
double surrogate_ratio(std::span<const FunctionSpec> specs, const PExponent& p,
                       const GridSpec& grid);

/// Runs empirical_ratio on m identical copies and the matched-grid surrogate
/// ratio; upper_bound_ok and surrogate_ok carry the two checks.
SharpnessReport verify_sharp_constant(const FunctionSpec& spec, int m,
                                      const PExponent& p, const GridSpec& grid,
                                      Engine engine = Engine::Parallel);

struct GlsBoundReport {
    std::string psi;
    std::string nu;
    std::string zeta;
    int d = 0;
    int m = 0;
    double lhs = 0.0;        // ||fold||_{G nu}
    double fund = 0.0;       // fundamental function of zeta at m^d
    double sum_norms = 0.0;  // sum_j ||f_j||_{G psi}
    double rhs = 0.0;        // fund * sum_norms
    bool satisfied = false;  // lhs <= rhs (1 + tolerance)
    double margin = 0.0;     // (rhs - lhs) / rhs
    double tolerance = 0.0;
    double achieved_p = 0.0;        // exponent attaining the lhs sup
    int chain_points = 0;           // sampled exponents checked pointwise
    double chain_max_excess = 0.0;  // max_p [ ||fold||_p/nu(p) - m^(d/p)/zeta(p) * sum ]
    bool chain_ok = false;
    bool trivial_factorization = false;
    bool example_bound_ok = false;  // trivial case: lhs <= m^d * sum_norms
};

/// Checks ||fold||_{G nu} <= fund_{G zeta}(m^d) * sum_j ||f_j||_{G psi} for
/// the given factorization psi = nu/zeta, plus the pointwise-in-p chain
/// inequality at every sampled exponent. Throws HypothesisViolated when some
/// ||f_j||_{G psi} is infinite.
GlsBoundReport verify_gls_bound(std::span<const FunctionSpec> specs,
                                const GeneratingFunction& psi,
                                const FactorStrategy& strategy, const GridSpec& grid,
                                const PSampling& sampling,
                                Engine engine = Engine::Parallel);

struct ScanEntry {
    double param = 0.0;
    std::optional<SharpnessReport> report;
    std::string error;  // empty on success
};

struct ScanResult {
    std::vector<ScanEntry> entries;
    double bound = 0.0;
    std::optional<double> best_param;
    double best_ratio = 0.0;
    double best_gap = 0.0;  // bound - best_ratio
};

/// One-parameter family scan: instantiates the family at each parameter,
/// runs empirical_ratio on m copies, records per-instance errors and keeps
/// scanning. Reports the best-found ratio; attainment is never claimed.
ScanResult scan_ratio(const std::function<FunctionSpec(double)>& family,
                      std::span<const double> params, int m, const PExponent& p,
                      const GridSpec& grid, Engine engine = Engine::Parallel);

}  // namespace infconv
