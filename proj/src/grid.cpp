#include "infconv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infconv/errors.hpp"

namespace infconv {

GridSpec::GridSpec(int dimension, double half_width, int points_per_axis,
                   std::size_t node_cap)
    : dim_(dimension), half_width_(half_width), n_(points_per_axis) {
    if (dim_ < 1 || dim_ > 3)
        throw InvalidGrid("dimension must be 1, 2 or 3, got " + std::to_string(dim_));
    if (!(half_width_ > 0.0) || !std::isfinite(half_width_))
        throw InvalidGrid("half_width must be positive and finite");
    if (n_ < 3) throw InvalidGrid("points_per_axis must be >= 3");
    if (n_ % 2 == 0)
        throw InvalidGrid("points_per_axis must be odd so the origin is a node, got " +
                          std::to_string(n_));

    unsigned __int128 count = 1;
    for (int a = 0; a < dim_; ++a) {
        count *= static_cast<unsigned __int128>(n_);
        if (count > static_cast<unsigned __int128>(node_cap))
            throw GridTooLarge("n^d exceeds the node cap of " + std::to_string(node_cap));
    }
    node_count_ = static_cast<std::size_t>(count);
    spacing_ = 2.0 * half_width_ / static_cast<double>(n_ - 1);
}

GridSpec make_grid(int dimension, double half_width, int points_per_axis,
                   std::size_t node_cap) {
    return GridSpec(dimension, half_width, points_per_axis, node_cap);
}

GridFunction::GridFunction(GridSpec grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.node_count())
        throw InvalidValue("GridFunction: sample count " + std::to_string(samples_.size()) +
                           " does not match node count " + std::to_string(grid_.node_count()));
    bool any_finite = false;
    for (double v : samples_) {
        if (!is_ext_real(v))
            throw InvalidValue("GridFunction: samples must be finite or +inf");
        any_finite = any_finite || std::isfinite(v);
    }
    if (!any_finite)
        throw DegenerateFunction("GridFunction: all samples are +inf");
}

bool GridFunction::has_infinite_sample() const {
    return std::any_of(samples_.begin(), samples_.end(),
                       [](double v) { return v == kPlusInfinity; });
}

double GridFunction::max_abs_finite() const {
    double m = 0.0;
    for (double v : samples_)
        if (std::isfinite(v)) m = std::max(m, std::abs(v));
    return m;
}

GridFunction scale(const GridFunction& f, double c) {
    if (!std::isfinite(c)) throw InvalidValue("scale: factor must be finite");
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = (c == 0.0) ? 0.0 : c * f[i];
    return GridFunction(f.grid(), std::move(out));
}

GridFunction add(const GridFunction& f, const GridFunction& g) {
    if (f.grid() != g.grid()) throw GridMismatch("add: grids differ");
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] + g[i];
    return GridFunction(f.grid(), std::move(out));
}

double tolerance_scale(const GridFunction& f) {
    return std::max(1.0, f.max_abs_finite());
}

double tolerance_scale(const GridFunction& f, const GridFunction& g) {
    return std::max(tolerance_scale(f), tolerance_scale(g));
}

}  // namespace infconv
