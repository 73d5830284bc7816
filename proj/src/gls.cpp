#include "infconv/gls.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "infconv/errors.hpp"

namespace infconv {

namespace {

std::string format_number(double v) {
    if (v == kPlusInfinity) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

GeneratingFunction::GeneratingFunction(Variant v, double a, double b)
    : v_(std::move(v)), a_(a), b_(b) {}

GeneratingFunction GeneratingFunction::power(double s) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw InvalidGeneratingFunction("power: s must be positive");
    return GeneratingFunction(PowerLaw{s}, 1.0, kPlusInfinity);
}

GeneratingFunction GeneratingFunction::degenerate(double r) {
    if (!(r >= 1.0) || !std::isfinite(r))
        throw InvalidGeneratingFunction("degenerate: r must satisfy r >= 1");
    return GeneratingFunction(PointMass{r}, r, r);
}

GeneratingFunction GeneratingFunction::constant_one(double a, double b) {
    if (!(a >= 1.0) || !std::isfinite(a))
        throw InvalidGeneratingFunction("one: a must satisfy a >= 1");
    if (!(b > a)) throw InvalidGeneratingFunction("one: b must exceed a");
    return GeneratingFunction(Unit{}, a, b);
}

GeneratingFunction GeneratingFunction::ratio(GeneratingFunction num,
                                             GeneratingFunction den) {
    const double a = std::max(num.lower(), den.lower());
    const double b = std::min(num.upper(), den.upper());
    if (a > b) throw InvalidGeneratingFunction("ratio: domains do not intersect");
    GeneratingFunction out(
        Quotient{std::make_shared<GeneratingFunction>(std::move(num)),
                 std::make_shared<GeneratingFunction>(std::move(den))},
        a, b);
    // Probe positivity of the finite values (inf psi > 0 requirement).
    const double hi = std::min(b, std::max(a + 1.0, kExponentCap));
    for (int k = 0; k <= 16; ++k) {
        const double p = a + (hi - a) * k / 16.0;
        double v;
        try {
            v = out.value(p);
        } catch (const IndeterminateGeneratingValue&) {
            continue;
        }
        if (std::isfinite(v) && v <= 0.0)
            throw InvalidGeneratingFunction("ratio: nonpositive value at p = " +
                                            format_number(p));
    }
    return out;
}

GeneratingFunction GeneratingFunction::tabulated(std::vector<double> exponents,
                                                 std::vector<double> values) {
    if (exponents.size() < 2 || exponents.size() != values.size())
        throw InvalidGeneratingFunction("tabulated: need matching arrays, length >= 2");
    if (!(exponents.front() >= 1.0))
        throw InvalidGeneratingFunction("tabulated: exponents must start at >= 1");
    for (std::size_t i = 0; i + 1 < exponents.size(); ++i)
        if (!(exponents[i] < exponents[i + 1]))
            throw InvalidGeneratingFunction("tabulated: exponents must be ascending");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v))
            throw InvalidGeneratingFunction("tabulated: values must be finite positive");
    const double a = exponents.front();
    const double b = exponents.back();
    return GeneratingFunction(Table{std::move(exponents), std::move(values)}, a, b);
}

double GeneratingFunction::value(double p) const {
    if (std::isnan(p)) throw InvalidArgument("generating function: NaN exponent");
    if (p < a_ || p > b_) return kPlusInfinity;
    return std::visit(
        [&](const auto& g) -> double {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, PowerLaw>) {
                return std::pow(p, 1.0 / g.s);
            } else if constexpr (std::is_same_v<T, PointMass>) {
                return p == g.r ? 1.0 : kPlusInfinity;
            } else if constexpr (std::is_same_v<T, Unit>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, Quotient>) {
                const double nv = g.num->value(p);
                const double dv = g.den->value(p);
                const bool ninf = nv == kPlusInfinity;
                const bool dinf = dv == kPlusInfinity;
                if (ninf && dinf)
                    throw IndeterminateGeneratingValue("ratio: inf/inf at p = " +
                                                       format_number(p));
                if (nv == 0.0 && dv == 0.0)
                    throw IndeterminateGeneratingValue("ratio: 0/0 at p = " +
                                                       format_number(p));
                if (ninf) return kPlusInfinity;
                if (dinf) return 0.0;
                return nv / dv;
            } else {  // Table
                const auto& xs = g.exponents;
                auto it = std::lower_bound(xs.begin(), xs.end(), p);
                if (it == xs.begin()) return g.values.front();
                const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
                if (hi == xs.size()) return g.values.back();
                const std::size_t lo = hi - 1;
                const double w = (p - xs[lo]) / (xs[hi] - xs[lo]);
                return g.values[lo] + w * (g.values[hi] - g.values[lo]);
            }
        },
        v_);
}

bool GeneratingFunction::is_degenerate() const {
    return std::holds_alternative<PointMass>(v_);
}

double GeneratingFunction::degenerate_point() const {
    if (!is_degenerate())
        throw InvalidArgument("degenerate_point: not a degenerate generating function");
    return std::get<PointMass>(v_).r;
}

bool GeneratingFunction::is_constant_one() const {
    return std::holds_alternative<Unit>(v_);
}

std::string GeneratingFunction::to_string() const {
    return std::visit(
        [&](const auto& g) -> std::string {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, PowerLaw>) {
                return "power:s=" + format_number(g.s);
            } else if constexpr (std::is_same_v<T, PointMass>) {
                return "degenerate:r=" + format_number(g.r);
            } else if constexpr (std::is_same_v<T, Unit>) {
                return "one:a=" + format_number(a_) + ",b=" + format_number(b_);
            } else if constexpr (std::is_same_v<T, Quotient>) {
                return "ratio:num=" + g.num->to_string() + ",den=" + g.den->to_string();
            } else {
                return "tabulated[" + std::to_string(g.exponents.size()) + " points]";
            }
        },
        v_);
}

GeneratingFunction parse_generating_function(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto parse_value = [](const std::string& v) -> double {
        if (v == "inf") return kPlusInfinity;
        std::size_t consumed = 0;
        double parsed = 0.0;
        try {
            parsed = std::stod(v, &consumed);
        } catch (const std::exception&) {
            throw ParseError("bad numeric value '" + v + "'");
        }
        if (consumed != v.size()) throw ParseError("bad numeric value '" + v + "'");
        return parsed;
    };
    auto single_param = [&](const std::string& key) -> double {
        const std::string prefix = key + "=";
        if (rest.rfind(prefix, 0) != 0)
            throw ParseError("expected '" + prefix + "...' in '" + text + "'");
        return parse_value(rest.substr(prefix.size()));
    };

    if (name == "power") return GeneratingFunction::power(single_param("s"));
    if (name == "degenerate") return GeneratingFunction::degenerate(single_param("r"));
    if (name == "one") {
        if (rest.empty()) return GeneratingFunction::constant_one();
        const auto comma = rest.find(',');
        if (comma == std::string::npos || rest.rfind("a=", 0) != 0 ||
            rest.compare(comma + 1, 2, "b=") != 0)
            throw ParseError("expected 'one:a=...,b=...' in '" + text + "'");
        const double a = parse_value(rest.substr(2, comma - 2));
        const double b = parse_value(rest.substr(comma + 3));
        return GeneratingFunction::constant_one(a, b);
    }
    if (name == "ratio") {
        if (rest.rfind("num=", 0) != 0)
            throw ParseError("expected 'ratio:num=...,den=...' in '" + text + "'");
        const auto den_pos = rest.find(",den=");
        if (den_pos == std::string::npos)
            throw ParseError("expected 'ratio:num=...,den=...' in '" + text + "'");
        const std::string num_text = rest.substr(4, den_pos - 4);
        const std::string den_text = rest.substr(den_pos + 5);
        if (num_text.rfind("ratio", 0) == 0 || den_text.rfind("ratio", 0) == 0)
            throw ParseError("nested ratio generating functions are not supported");
        return GeneratingFunction::ratio(parse_generating_function(num_text),
                                         parse_generating_function(den_text));
    }
    throw ParseError("unknown generating function '" + name + "'");
}

PSampling::PSampling(double p_min, double p_max, int count, Spacing spacing)
    : p_min_(p_min), p_max_(p_max), count_(count), spacing_(spacing) {
    if (!(p_min >= 1.0) || !std::isfinite(p_min))
        throw InvalidArgument("PSampling: p_min must satisfy p_min >= 1");
    if (!(p_max > p_min) || !std::isfinite(p_max))
        throw InvalidArgument("PSampling: p_max must exceed p_min");
    if (count < 2) throw InvalidArgument("PSampling: count must be >= 2");
}

PSampling PSampling::default_for(const GeneratingFunction& gf) {
    if (gf.is_degenerate())
        throw InvalidArgument(
            "PSampling: a degenerate generating function has a single exponent");
    const double a = gf.lower();
    const double b = std::min(gf.upper(), kExponentCap);
    return PSampling(a, b, 33, Spacing::Log);
}

std::vector<double> PSampling::points() const {
    std::vector<double> out(static_cast<std::size_t>(count_));
    if (spacing_ == Spacing::Linear) {
        const double step = (p_max_ - p_min_) / (count_ - 1);
        for (int i = 0; i < count_; ++i) out[static_cast<std::size_t>(i)] = p_min_ + i * step;
    } else {
        const double la = std::log(p_min_);
        const double lb = std::log(p_max_);
        const double step = (lb - la) / (count_ - 1);
        for (int i = 0; i < count_; ++i)
            out[static_cast<std::size_t>(i)] = std::exp(la + i * step);
    }
    out.front() = p_min_;
    out.back() = p_max_;
    return out;
}

GlsNormResult gls_norm(const GridFunction& f, const GeneratingFunction& gf,
                       const PSampling& sampling) {
    if (gf.is_degenerate()) {
        const double r = gf.degenerate_point();
        return GlsNormResult{lp_norm(f, PExponent::finite(r)), r};
    }
    bool any_effective = false;
    GlsNormResult best;
    for (double p : sampling.points()) {
        const double psi = gf.value(p);
        if (psi == kPlusInfinity) continue;  // c/inf := 0
        if (!any_effective) {
            any_effective = true;
            best.achieved_p = p;
        }
        const double norm = lp_norm(f, PExponent::finite(p));
        const double r = norm == kPlusInfinity ? kPlusInfinity : norm / psi;
        if (r > best.value) {
            best.value = r;
            best.achieved_p = p;
        }
    }
    if (!any_effective)
        throw EmptyDomain("gls_norm: generating function infinite at every sampled p");
    return best;
}

namespace {

double log_objective(const GeneratingFunction& gf, double log_delta, double p) {
    const double psi = gf.value(p);
    if (psi == kPlusInfinity) return -kPlusInfinity;
    return log_delta / p - std::log(psi);
}

// Golden-section maximization of the log objective on [lo, hi].
double golden_refine(const GeneratingFunction& gf, double log_delta, double lo,
                     double hi) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = log_objective(gf, log_delta, x1);
    double f2 = log_objective(gf, log_delta, x2);
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = log_objective(gf, log_delta, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = log_objective(gf, log_delta, x1);
        }
    }
    const double mid = 0.5 * (lo + hi);
    return std::max({log_objective(gf, log_delta, mid), f1, f2});
}

}  // namespace

double fundamental_function(const GeneratingFunction& gf, double delta) {
    if (!(delta >= 0.0) || std::isnan(delta))
        throw InvalidArgument("fundamental_function: delta must be >= 0");
    if (delta == 0.0) return 0.0;

    auto root = [](double x, double exponent) {
        return exponent == 1.0 ? x : std::pow(x, 1.0 / exponent);
    };
    if (gf.is_degenerate()) return root(delta, gf.degenerate_point());
    if (gf.is_constant_one()) {
        if (delta >= 1.0) return root(delta, gf.lower());
        return gf.upper() == kPlusInfinity ? 1.0 : root(delta, gf.upper());
    }

    const double a = gf.lower();
    const double b = std::min(gf.upper(), std::max(kExponentCap, a + 1.0));
    const double log_delta = std::log(delta);

    constexpr int kGridPoints = 129;
    const double la = std::log(a);
    const double lb = std::log(b);
    double best = -kPlusInfinity;
    int best_i = 0;
    std::vector<double> ps(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) {
        const double p = std::exp(la + (lb - la) * i / (kGridPoints - 1));
        ps[static_cast<std::size_t>(i)] = p;
        double v;
        try {
            v = log_objective(gf, log_delta, p);
        } catch (const IndeterminateGeneratingValue&) {
            v = -kPlusInfinity;
        }
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    if (best == -kPlusInfinity)
        throw EmptyDomain("fundamental_function: generating function infinite everywhere");

    const double lo = ps[static_cast<std::size_t>(std::max(0, best_i - 1))];
    const double hi = ps[static_cast<std::size_t>(std::min(kGridPoints - 1, best_i + 1))];
    const double refined = golden_refine(gf, log_delta, lo, hi);
    return std::exp(std::max(best, refined));
}

std::pair<GeneratingFunction, GeneratingFunction> factorize(
    const GeneratingFunction& gf, const FactorStrategy& strategy) {
    if (std::holds_alternative<TrivialFactorization>(strategy))
        return {gf, GeneratingFunction::constant_one()};

    const auto& given = std::get<GivenFactorization>(strategy);
    const GeneratingFunction& num = given.num;
    const GeneratingFunction& den = given.den;
    if (num.lower() > gf.lower() || num.upper() < gf.upper() ||
        den.lower() > gf.lower() || den.upper() < gf.upper())
        throw NotAFactorization(
            "factorize: factor domains must contain the generating function domain");

    std::vector<double> probes;
    if (gf.is_degenerate()) {
        probes.push_back(gf.degenerate_point());
    } else {
        const double a = gf.lower();
        const double b = std::min(gf.upper(), kExponentCap);
        const double la = std::log(a);
        const double lb = std::log(std::max(b, a + 1.0));
        for (int i = 0; i < 8; ++i) probes.push_back(std::exp(la + (lb - la) * i / 7.0));
    }
    for (double p : probes) {
        const double psi = gf.value(p);
        if (psi == kPlusInfinity) continue;
        double nv, dv;
        try {
            nv = num.value(p);
            dv = den.value(p);
        } catch (const IndeterminateGeneratingValue&) {
            throw NotAFactorization("factorize: indeterminate factor value at p = " +
                                    format_number(p));
        }
        if (nv == kPlusInfinity || dv == kPlusInfinity)
            throw NotAFactorization("factorize: infinite factor value at p = " +
                                    format_number(p));
        const double q = nv / dv;
        if (std::abs(q - psi) > 1e-12 * std::max(1.0, std::abs(psi)))
            throw NotAFactorization("factorize: num/den = " + format_number(q) +
                                    " differs from psi = " + format_number(psi) +
                                    " at p = " + format_number(p));
    }
    return {num, den};
}

}  // namespace infconv
