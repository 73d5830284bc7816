#include "infconv/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infconv/errors.hpp"

namespace infconv {

PExponent PExponent::finite(double p) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw InvalidArgument("PExponent: finite p must satisfy p >= 1");
    return PExponent(false, p);
}

double PExponent::value() const {
    if (infinite_) throw InvalidArgument("PExponent: no finite value for p = inf");
    return p_;
}

namespace {

// Deterministic pairwise reduction, independent of thread count.
double pairwise_sum(std::span<const double> terms) {
    const std::size_t n = terms.size();
    if (n <= 8) {
        double s = 0.0;
        for (double t : terms) s += t;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(terms.subspan(0, half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace

double lp_norm(const GridFunction& f, const PExponent& p) {
    const auto vals = f.values();
    if (p.is_infinite()) {
        double m = 0.0;
        for (double v : vals) {
            if (v == kPlusInfinity) return kPlusInfinity;
            m = std::max(m, std::abs(v));
        }
        return m;
    }

    double peak = 0.0;
    for (double v : vals) {
        if (v == kPlusInfinity) return kPlusInfinity;
        peak = std::max(peak, std::abs(v));
    }
    if (peak == 0.0) return 0.0;

    // Scale by the peak so |f_i/peak|^p never overflows at large p.
    const double pv = p.value();
    std::vector<double> terms(vals.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(vals.size()); ++i) {
        const double t = std::abs(vals[static_cast<std::size_t>(i)]) / peak;
        terms[static_cast<std::size_t>(i)] = std::pow(t, pv);
    }
    const double total = pairwise_sum(terms);
    const double cell = std::pow(f.grid().spacing(), f.grid().dimension());
    return peak * std::pow(cell * total, 1.0 / pv);
}

DilationIdentityReport dilation_norm_identity_check(const FunctionSpec& spec,
                                                    double lambda,
                                                    const PExponent& p,
                                                    const GridSpec& grid) {
    if (p.is_infinite())
        throw InvalidArgument("dilation_norm_identity_check: requires finite p");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InvalidArgument("dilation_norm_identity_check: lambda must be positive");

    const double lhs = lp_norm(dilate(spec, lambda, grid), p);
    const GridSpec matched = grid.scaled(lambda);
    const double base = lp_norm(sample(spec, matched), p);
    if (!std::isfinite(lhs) || !std::isfinite(base))
        throw IdentityNotApplicable(
            "dilation_norm_identity_check: infinite norm for spec " + spec.to_string());
    const double rhs =
        std::pow(lambda, -static_cast<double>(grid.dimension()) / p.value()) * base;
    DilationIdentityReport report;
    report.lambda = lambda;
    report.lhs = lhs;
    report.rhs = rhs;
    report.rel_gap = rhs == 0.0 ? (lhs == 0.0 ? 0.0 : kPlusInfinity)
                                : std::abs(lhs - rhs) / rhs;
    return report;
}

double tail_function(const GridFunction& f, double u) {
    if (!(u >= 1.0)) throw InvalidArgument("tail_function: u must be >= 1");
    const auto vals = f.values();
    std::size_t count = 0;
    for (double v : vals)
        if (std::abs(v) >= u) ++count;
    const double cell = std::pow(f.grid().spacing(), f.grid().dimension());
    return cell * static_cast<double>(count);
}

TailReport subgaussian_fit(const GridFunction& f, double s,
                           std::span<const double> u_grid) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw InvalidArgument("subgaussian_fit: s must be positive");
    TailReport report;
    report.s = s;
    double prev = kPlusInfinity;
    for (double u : u_grid) {
        if (!(u >= 1.0)) throw InvalidArgument("subgaussian_fit: thresholds must be >= 1");
        if (u <= prev && prev != kPlusInfinity)
            throw InvalidArgument("subgaussian_fit: thresholds must be ascending");
        prev = u;
        report.u_grid.push_back(u);
        report.tail_values.push_back(tail_function(f, u));
    }
    double best = kPlusInfinity;
    for (std::size_t i = 0; i < report.u_grid.size(); ++i) {
        const double t = report.tail_values[i];
        if (t <= 0.0) continue;
        const double c = -std::log(t) / std::pow(report.u_grid[i], s);
        best = std::min(best, c);
    }
    if (best == kPlusInfinity) {
        report.vacuous = true;
    } else {
        report.fitted_c = best;
    }
    return report;
}

}  // namespace infconv
