#include "infconv/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infconv/errors.hpp"

namespace infconv {

namespace {

void require_same_grid(const GridFunction& f, const GridFunction& g) {
    if (f.grid() != g.grid())
        throw GridMismatch("min-plus convolution requires identical grids");
}

struct PairKernel {
    const GridSpec& grid;
    std::span<const double> f;
    std::span<const double> g;
    int n, o, dim;
    std::size_t stride[3];

    PairKernel(const GridFunction& ff, const GridFunction& gg)
        : grid(ff.grid()),
          f(ff.values()),
          g(gg.values()),
          n(grid.points_per_axis()),
          o(grid.origin_index()),
          dim(grid.dimension()) {
        std::size_t s = 1;
        for (int a = dim - 1; a >= 0; --a) {
            stride[a] = s;
            s *= static_cast<std::size_t>(n);
        }
    }

    // Feasible j per axis: j and i - j + o both valid node indices.
    double min_at(std::size_t flat_out) const {
        const auto out_idx = grid.unflatten(flat_out);
        int lo[3] = {0, 0, 0};
        int hi[3] = {-1, -1, -1};
        std::size_t sum_flat = 0;  // flat index of (out + o) per axis
        for (int a = 0; a < dim; ++a) {
            const int t = out_idx[a] + o;
            lo[a] = std::max(0, t - (n - 1));
            hi[a] = std::min(n - 1, t);
            sum_flat += static_cast<std::size_t>(t) * stride[a];
        }
        double best = kPlusInfinity;
        for (int j0 = lo[0]; j0 <= hi[0]; ++j0) {
            const std::size_t base0 = static_cast<std::size_t>(j0) * stride[0];
            const int lo1 = dim > 1 ? lo[1] : 0;
            const int hi1 = dim > 1 ? hi[1] : 0;
            for (int j1 = lo1; j1 <= hi1; ++j1) {
                const std::size_t base1 =
                    base0 + (dim > 1 ? static_cast<std::size_t>(j1) * stride[1] : 0);
                const int lo2 = dim > 2 ? lo[2] : 0;
                const int hi2 = dim > 2 ? hi[2] : 0;
                for (int j2 = lo2; j2 <= hi2; ++j2) {
                    const std::size_t jf =
                        base1 + (dim > 2 ? static_cast<std::size_t>(j2) * stride[2] : 0);
                    const double fv = f[jf];
                    if (fv == kPlusInfinity) continue;
                    const double cand = fv + g[sum_flat - jf];
                    if (cand < best) best = cand;
                }
            }
        }
        return best;
    }
};

}  // namespace

namespace reference {

GridFunction convolve_pair(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    PairKernel kernel(f, g);
    const std::size_t count = f.size();
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = kernel.min_at(i);
    return GridFunction(f.grid(), std::move(out));
}

}  // namespace reference

GridFunction convolve_pair(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    PairKernel kernel(f, g);
    const std::size_t count = f.size();
    std::vector<double> out(count);
#pragma omp parallel for schedule(dynamic, 64)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
        out[static_cast<std::size_t>(i)] = kernel.min_at(static_cast<std::size_t>(i));
    return GridFunction(f.grid(), std::move(out));
}

GridFunction convolve_fold(std::span<const GridFunction> fs) {
    if (fs.empty()) throw EmptyFold("convolve_fold: empty input list");
    GridFunction acc = fs[0];
    for (std::size_t j = 1; j < fs.size(); ++j) acc = convolve_pair(acc, fs[j]);
    return acc;
}

GridFunction convolve_direct(std::span<const GridFunction> fs) {
    const std::size_t m = fs.size();
    if (m < 2) throw InvalidArgument("convolve_direct: needs m >= 2");
    for (std::size_t j = 1; j < m; ++j) require_same_grid(fs[0], fs[j]);

    const GridSpec& grid = fs[0].grid();
    const int n = grid.points_per_axis();
    const int o = grid.origin_index();
    const int dim = grid.dimension();
    const double cost =
        dim * static_cast<double>(m - 1) * std::log2(static_cast<double>(n));
    if (cost > 40.0)
        throw OracleTooLarge("convolve_direct: d*(m-1)*log2(n) = " +
                             std::to_string(cost) + " exceeds 40");

    const std::size_t count = grid.node_count();
    std::vector<double> out(count);

    // Lower bound on what the functions from depth j onward can contribute,
    // so branches prune correctly even with negative samples.
    std::vector<double> suffix_min(m + 1, 0.0);
    for (std::size_t j = m; j-- > 0;) {
        double lo = kPlusInfinity;
        for (double v : fs[j].values()) lo = std::min(lo, v);
        suffix_min[j] = lo + suffix_min[j + 1];
    }

#pragma omp parallel for schedule(dynamic, 8)
    for (long long flat = 0; flat < static_cast<long long>(count); ++flat) {
        const auto target = grid.unflatten(static_cast<std::size_t>(flat));
        double best = kPlusInfinity;
        std::array<int, 3> offset_sum{0, 0, 0};  // sum of (index - o) so far

        // Depth-first over the first m-1 points; the last is forced by the
        // sum constraint.
        auto descend = [&](auto&& self, std::size_t depth, double partial) -> void {
            if (partial + suffix_min[depth] >= best) return;
            if (depth == m - 1) {
                std::array<int, 3> last{0, 0, 0};
                for (int a = 0; a < dim; ++a) {
                    last[a] = target[a] - offset_sum[a];
                    if (last[a] < 0 || last[a] >= n) return;
                }
                const double v = fs[m - 1][grid.flatten(last)];
                const double cand = partial + v;
                if (cand < best) best = cand;
                return;
            }
            const auto& fj = fs[depth];
            for (std::size_t node = 0; node < fj.size(); ++node) {
                const double v = fj[node];
                if (v == kPlusInfinity) continue;
                const auto nidx = grid.unflatten(node);
                for (int a = 0; a < dim; ++a) offset_sum[a] += nidx[a] - o;
                self(self, depth + 1, partial + v);
                for (int a = 0; a < dim; ++a) offset_sum[a] -= nidx[a] - o;
            }
        };
        descend(descend, 0, 0.0);
        out[static_cast<std::size_t>(flat)] = best;
    }
    return GridFunction(grid, std::move(out));
}

GridFunction symmetric_surrogate(const FunctionSpec& spec, int m, const GridSpec& grid) {
    if (m < 1) throw InvalidArgument("symmetric_surrogate: m must be >= 1");
    if (m == 1) return sample(spec, grid);
    const double inv = 1.0 / static_cast<double>(m);
    const double scale = static_cast<double>(m);
    const std::size_t count = grid.node_count();
    const int dim = grid.dimension();
    std::vector<double> out(count);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        auto p = grid.point(static_cast<std::size_t>(i));
        for (int a = 0; a < dim; ++a) p[a] *= inv;
        out[static_cast<std::size_t>(i)] = scale * spec.evaluate(p, dim).get();
    }
    return GridFunction(grid, std::move(out));
}

namespace {

// 1-D min-plus fold of per-axis profiles sampled on the axis grid.
std::vector<double> fold_profiles_1d(std::span<const FunctionSpec> specs,
                                     const GridSpec& grid) {
    const int n = grid.points_per_axis();
    const int o = grid.origin_index();
    auto sample_profile = [&](const FunctionSpec& s) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = s.axis_profile(grid.coordinate(i));
        return v;
    };
    std::vector<double> acc = sample_profile(specs[0]);
    std::vector<double> next(static_cast<std::size_t>(n));
    for (std::size_t jspec = 1; jspec < specs.size(); ++jspec) {
        const auto fj = sample_profile(specs[jspec]);
        for (int i = 0; i < n; ++i) {
            const int lo = std::max(0, i + o - (n - 1));
            const int hi = std::min(n - 1, i + o);
            double best = kPlusInfinity;
            for (int j = lo; j <= hi; ++j) {
                const double fv = acc[static_cast<std::size_t>(j)];
                if (fv == kPlusInfinity) continue;
                const double cand = fv + fj[static_cast<std::size_t>(i - j + o)];
                if (cand < best) best = cand;
            }
            next[static_cast<std::size_t>(i)] = best;
        }
        acc.swap(next);
    }
    return acc;
}

}  // namespace

GridFunction convolve_fold_separable(std::span<const FunctionSpec> specs,
                                     const GridSpec& grid) {
    if (specs.empty()) throw EmptyFold("convolve_fold_separable: empty input list");
    for (const auto& s : specs)
        if (!s.is_separable())
            throw InvalidArgument("convolve_fold_separable: '" + s.to_string() +
                                  "' is not additively separable");
    // Axes share one coordinate set, so a single 1-D fold serves all of them.
    const std::vector<double> axis = fold_profiles_1d(specs, grid);
    const std::size_t count = grid.node_count();
    const int dim = grid.dimension();
    std::vector<double> out(count);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        const auto idx = grid.unflatten(static_cast<std::size_t>(i));
        double s = 0.0;
        for (int a = 0; a < dim; ++a) s += axis[static_cast<std::size_t>(idx[a])];
        out[static_cast<std::size_t>(i)] = s;
    }
    return GridFunction(grid, std::move(out));
}

ConvexSequence::ConvexSequence(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2)
        throw InvalidArgument("ConvexSequence: need at least 2 values");
    double scale = 1.0;
    for (double v : values_) {
        if (!std::isfinite(v)) throw NotConvex("ConvexSequence: values must be finite");
        scale = std::max(scale, std::abs(v));
    }
    const double tol = 1e-12 * scale;
    for (std::size_t i = 0; i + 2 < values_.size(); ++i) {
        const double d0 = values_[i + 1] - values_[i];
        const double d1 = values_[i + 2] - values_[i + 1];
        if (d1 < d0 - tol)
            throw NotConvex("ConvexSequence: increments decrease at position " +
                            std::to_string(i + 1));
    }
}

ConvexSequence convolve_convex_1d(const ConvexSequence& f, const ConvexSequence& g) {
    const std::size_t n = f.size();
    if (g.size() != n)
        throw GridMismatch("convolve_convex_1d: sequences have different lengths");
    if (n % 2 == 0)
        throw InvalidArgument("convolve_convex_1d: length must be odd (origin node)");
    const std::size_t o = (n - 1) / 2;

    // Walk the merged increment sequence, tracking how many increments were
    // consumed from each operand. Slot t of the uncropped result is exactly
    // f[j] + g[k] with j + k = t, so no prefix-sum rounding accumulates.
    std::vector<double> out(n);
    std::size_t j = 0, k = 0;
    for (std::size_t t = 0; t <= o + (n - 1); ++t) {
        if (t >= o) out[t - o] = f[j] + g[k];
        const bool f_exhausted = (j == n - 1);
        const bool g_exhausted = (k == n - 1);
        if (f_exhausted && g_exhausted) break;
        if (g_exhausted) {
            ++j;
        } else if (f_exhausted) {
            ++k;
        } else {
            const double df = f[j + 1] - f[j];
            const double dg = g[k + 1] - g[k];
            if (df <= dg)
                ++j;
            else
                ++k;
        }
    }
    return ConvexSequence(std::move(out));
}

}  // namespace infconv
