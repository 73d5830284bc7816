#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "infconv/ext_real.hpp"

namespace infconv {

inline constexpr std::size_t kDefaultNodeCap = std::size_t{1} << 24;

/// Origin-centered uniform grid over [-L, L]^d with an odd number of nodes
/// per axis, so the origin is always a node. Node coordinate along one axis:
/// x_i = (i - origin_index) * spacing, which is -L + i*h up to rounding and
/// makes mirrored nodes exact negations of each other.
class GridSpec {
public:
    GridSpec(int dimension, double half_width, int points_per_axis,
             std::size_t node_cap = kDefaultNodeCap);

    int dimension() const { return dim_; }
    double half_width() const { return half_width_; }
    int points_per_axis() const { return n_; }
    double spacing() const { return spacing_; }
    int origin_index() const { return (n_ - 1) / 2; }
    std::size_t node_count() const { return node_count_; }

    /// Coordinate of node index i along one axis; exact negation under mirror.
    double coordinate(int i) const {
        return static_cast<double>(i - origin_index()) * spacing_;
    }

    /// Full coordinates of a flat node index (row-major by axis order).
    std::array<double, 3> point(std::size_t flat) const {
        auto idx = unflatten(flat);
        std::array<double, 3> p{0.0, 0.0, 0.0};
        for (int a = 0; a < dim_; ++a) p[a] = coordinate(idx[a]);
        return p;
    }

    std::array<int, 3> unflatten(std::size_t flat) const {
        std::array<int, 3> idx{0, 0, 0};
        for (int a = dim_ - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(flat % static_cast<std::size_t>(n_));
            flat /= static_cast<std::size_t>(n_);
        }
        return idx;
    }

    std::size_t flatten(const std::array<int, 3>& idx) const {
        std::size_t flat = 0;
        for (int a = 0; a < dim_; ++a)
            flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx[a]);
        return flat;
    }

    /// Flat index of the node mirrored through the origin.
    std::size_t mirror(std::size_t flat) const {
        auto idx = unflatten(flat);
        for (int a = 0; a < dim_; ++a) idx[a] = n_ - 1 - idx[a];
        return flatten(idx);
    }

    /// Same dimension and node count, half-width scaled by `factor`.
    GridSpec scaled(double factor) const {
        return GridSpec(dim_, factor * half_width_, n_);
    }

    friend bool operator==(const GridSpec& a, const GridSpec& b) {
        return a.dim_ == b.dim_ && a.half_width_ == b.half_width_ && a.n_ == b.n_;
    }
    friend bool operator!=(const GridSpec& a, const GridSpec& b) { return !(a == b); }

private:
    int dim_;
    double half_width_;
    int n_;
    double spacing_;
    std::size_t node_count_;
};

GridSpec make_grid(int dimension, double half_width, int points_per_axis,
                   std::size_t node_cap = kDefaultNodeCap);

/// Extended-real samples on a grid, row-major by axis order. Invariants:
/// length n^d, every entry finite or +inf, at least one entry finite.
class GridFunction {
public:
    GridFunction(GridSpec grid, std::vector<double> samples);

    const GridSpec& grid() const { return grid_; }
    std::span<const double> values() const { return samples_; }
    double operator[](std::size_t i) const { return samples_[i]; }
    std::size_t size() const { return samples_.size(); }
    ExtReal at(std::size_t i) const { return ExtReal(samples_[i]); }

    bool has_infinite_sample() const;
    double max_abs_finite() const;

private:
    GridSpec grid_;
    std::vector<double> samples_;
};

/// Pointwise c*f; c == 0 yields the zero function (0 * inf := 0).
GridFunction scale(const GridFunction& f, double c);

/// Pointwise f + g on a shared grid.
GridFunction add(const GridFunction& f, const GridFunction& g);

/// max(1, largest finite |sample|) over the operands; the relative-comparison
/// scale used by engine tolerances.
double tolerance_scale(const GridFunction& f);
double tolerance_scale(const GridFunction& f, const GridFunction& g);

}  // namespace infconv
