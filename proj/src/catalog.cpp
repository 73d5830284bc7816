#include "infconv/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

#include "infconv/errors.hpp"

namespace infconv {

namespace {

double squared_norm(const std::array<double, 3>& p, int dim) {
    double s = 0.0;
    for (int a = 0; a < dim; ++a) s += p[a] * p[a];
    return s;
}

std::string format_param(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

FunctionSpec::FunctionSpec(Variant v) : v_(std::move(v)) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ScaledGaussian>) {
                if (!(s.c > 0.0) || !std::isfinite(s.c))
                    throw InvalidValue("gaussian: c must be positive");
            } else if constexpr (std::is_same_v<T, Quadratic>) {
                if (!(s.c >= 0.0) || !std::isfinite(s.c))
                    throw InvalidValue("quadratic: c must be nonnegative");
            } else if constexpr (std::is_same_v<T, Tent>) {
                if (!(s.radius > 0.0) || !std::isfinite(s.radius))
                    throw InvalidValue("tent: R must be positive");
            } else if constexpr (std::is_same_v<T, TruncatedQuadratic>) {
                if (!(s.c > 0.0) || !std::isfinite(s.c))
                    throw InvalidValue("trunc-quadratic: c must be positive");
                if (!(s.radius > 0.0) || !std::isfinite(s.radius))
                    throw InvalidValue("trunc-quadratic: R must be positive");
            }
        },
        v_);
}

ExtReal FunctionSpec::evaluate(const std::array<double, 3>& p, int dim) const {
    return std::visit(
        [&](const auto& s) -> ExtReal {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                return ExtReal(std::exp(-squared_norm(p, dim)));
            } else if constexpr (std::is_same_v<T, ScaledGaussian>) {
                return ExtReal(std::exp(-s.c * squared_norm(p, dim)));
            } else if constexpr (std::is_same_v<T, Quadratic>) {
                return ExtReal(s.c * squared_norm(p, dim));
            } else if constexpr (std::is_same_v<T, Tent>) {
                double r = std::sqrt(squared_norm(p, dim));
                return ExtReal(std::max(0.0, 1.0 - r / s.radius));
            } else if constexpr (std::is_same_v<T, IndicatorOrigin>) {
                for (int a = 0; a < dim; ++a)
                    if (p[a] != 0.0) return ExtReal::infinity();
                return ExtReal(0.0);
            } else {  // TruncatedQuadratic
                double q = squared_norm(p, dim);
                if (q > s.radius * s.radius) return ExtReal::infinity();
                return ExtReal(s.c * q);
            }
        },
        v_);
}

bool FunctionSpec::is_separable() const {
    return std::holds_alternative<Quadratic>(v_) ||
           std::holds_alternative<IndicatorOrigin>(v_);
}

double FunctionSpec::axis_profile(double t) const {
    if (const auto* q = std::get_if<Quadratic>(&v_)) return q->c * t * t;
    if (std::holds_alternative<IndicatorOrigin>(v_))
        return t == 0.0 ? 0.0 : kPlusInfinity;
    throw InvalidArgument("axis_profile: spec is not additively separable");
}

double FunctionSpec::lipschitz_bound(double bound, int dim) const {
    const double rmax = bound * std::sqrt(static_cast<double>(dim));
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                return std::sqrt(2.0 / std::exp(1.0));  // max |d/dr exp(-r^2)|
            } else if constexpr (std::is_same_v<T, ScaledGaussian>) {
                return std::sqrt(2.0 * s.c / std::exp(1.0));
            } else if constexpr (std::is_same_v<T, Quadratic>) {
                return 2.0 * s.c * rmax;
            } else if constexpr (std::is_same_v<T, Tent>) {
                return 1.0 / s.radius;
            } else if constexpr (std::is_same_v<T, IndicatorOrigin>) {
                return kPlusInfinity;
            } else {  // TruncatedQuadratic: jump at the truncation radius
                return rmax <= s.radius ? 2.0 * s.c * rmax : kPlusInfinity;
            }
        },
        v_);
}

std::string FunctionSpec::to_string() const {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                return "gaussian";
            } else if constexpr (std::is_same_v<T, ScaledGaussian>) {
                return "gaussian:c=" + format_param(s.c);
            } else if constexpr (std::is_same_v<T, Quadratic>) {
                return "quadratic:c=" + format_param(s.c);
            } else if constexpr (std::is_same_v<T, Tent>) {
                return "tent:R=" + format_param(s.radius);
            } else if constexpr (std::is_same_v<T, IndicatorOrigin>) {
                return "indicator-origin";
            } else {
                return "trunc-quadratic:c=" + format_param(s.c) +
                       ",R=" + format_param(s.radius);
            }
        },
        v_);
}

namespace {

std::map<std::string, double> parse_params(const std::string& text) {
    std::map<std::string, double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
            throw ParseError("expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        std::size_t consumed = 0;
        double parsed = 0.0;
        try {
            parsed = std::stod(val, &consumed);
        } catch (const std::exception&) {
            throw ParseError("bad numeric value '" + val + "'");
        }
        if (consumed != val.size())
            throw ParseError("bad numeric value '" + val + "'");
        if (!out.emplace(key, parsed).second)
            throw ParseError("duplicate parameter '" + key + "'");
    }
    return out;
}

double take(std::map<std::string, double>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw ParseError("missing parameter '" + key + "'");
    double v = it->second;
    params.erase(it);
    return v;
}

void expect_empty(const std::map<std::string, double>& params) {
    if (!params.empty())
        throw ParseError("unknown parameter '" + params.begin()->first + "'");
}

}  // namespace

FunctionSpec parse_function_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    auto params = colon == std::string::npos
                      ? std::map<std::string, double>{}
                      : parse_params(text.substr(colon + 1));
    if (name == "gaussian") {
        if (params.empty()) return FunctionSpec(Gaussian{});
        double c = take(params, "c");
        expect_empty(params);
        return FunctionSpec(ScaledGaussian{c});
    }
    if (name == "quadratic") {
        double c = take(params, "c");
        expect_empty(params);
        return FunctionSpec(Quadratic{c});
    }
    if (name == "tent") {
        double r = take(params, "R");
        expect_empty(params);
        return FunctionSpec(Tent{r});
    }
    if (name == "indicator-origin") {
        expect_empty(params);
        return FunctionSpec(IndicatorOrigin{});
    }
    if (name == "trunc-quadratic") {
        double c = take(params, "c");
        double r = take(params, "R");
        expect_empty(params);
        return FunctionSpec(TruncatedQuadratic{c, r});
    }
    throw ParseError("unknown function spec '" + name + "'");
}

GridFunction sample(const FunctionSpec& spec, const GridSpec& grid) {
    return dilate(spec, 1.0, grid);
}

GridFunction dilate(const FunctionSpec& spec, double lambda, const GridSpec& grid) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InvalidValue("dilate: lambda must be positive and finite");
    const std::size_t count = grid.node_count();
    std::vector<double> out(count);
    const int dim = grid.dimension();
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        auto p = grid.point(static_cast<std::size_t>(i));
        if (lambda != 1.0)
            for (int a = 0; a < dim; ++a) p[a] *= lambda;
        out[static_cast<std::size_t>(i)] = spec.evaluate(p, dim).get();
    }
    return GridFunction(grid, std::move(out));
}

}  // namespace infconv
