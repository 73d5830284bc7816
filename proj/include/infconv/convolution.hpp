#pragma once

#include <span>
#include <vector>

#include "infconv/catalog.hpp"
#include "infconv/grid.hpp"

namespace infconv {

// Discrete min-plus (infimal) convolution on a shared grid:
//   h[i] = min over node indices j (with i - j + o also a node, o = origin)
//          of f[j] + g[i - j + o].
// The output lives on the input grid; values whose feasible set is empty or
// all-infinite are +inf. The grid minimum is an upper bound on the continuum
// infimum.

namespace reference {
/// Serial brute-force engine. This is the correctness reference the parallel
/// and fast paths are tested against.
GridFunction convolve_pair(const GridFunction& f, const GridFunction& g);
}  // namespace reference

/// OpenMP brute-force engine, partitioned across output indices. Output is
/// bitwise identical to the reference for any thread count.
GridFunction convolve_pair(const GridFunction& f, const GridFunction& g);

/// Left fold convolve_pair(...(convolve_pair(f1, f2), f3)..., fm).
/// A single-element list is returned unchanged.
GridFunction convolve_fold(std::span<const GridFunction> fs);

/// Direct m-fold minimization over (m-1)-tuples of nodes, with the last point
/// determined by the sum constraint. Exponential cost; guarded by
/// d*(m-1)*log2(n) <= 40.
GridFunction convolve_direct(std::span<const GridFunction> fs);

/// m * spec(x/m) sampled analytically: the value of the m-term sum at the
/// symmetric split point. Pointwise upper bound on the m-fold convolution of
/// m copies of spec; equal to it for convex specs.
GridFunction symmetric_surrogate(const FunctionSpec& spec, int m, const GridSpec& grid);

/// Coordinate-wise fast path for additively separable specs (Quadratic,
/// IndicatorOrigin): the d-dimensional fold factorizes into one 1-D fold per
/// axis. Selected explicitly; throws InvalidArgument on non-separable input.
GridFunction convolve_fold_separable(std::span<const FunctionSpec> specs,
                                     const GridSpec& grid);

/// Finite values on a 1-D grid with non-decreasing increments (discrete
/// convexity), verified at construction within 1e-12 * max(1, max|value|).
class ConvexSequence {
public:
    explicit ConvexSequence(std::vector<double> values);

    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

/// O(n) min-plus convolution of convex sequences on the same odd-length 1-D
/// grid: the result's increments are the sorted merge of the operand
/// increments, anchored at f[0] + g[0] and cropped to the input index range
/// around the origin-aligned slot. Equals the brute-force convolution of the
/// same values.
ConvexSequence convolve_convex_1d(const ConvexSequence& f, const ConvexSequence& g);

}  // namespace infconv
