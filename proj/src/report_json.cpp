#include "infconv/report_json.hpp"

#include <cstdio>

namespace infconv {

JsonValue to_json(const PExponent& p) {
    if (p.is_infinite()) return JsonValue::string("inf");
    return JsonValue::number(p.value());
}

JsonValue to_json(const GridSpec& grid) {
    auto j = JsonValue::object();
    j.set("d", JsonValue::integer(grid.dimension()));
    j.set("L", JsonValue::number(grid.half_width()));
    j.set("n", JsonValue::integer(grid.points_per_axis()));
    j.set("h", JsonValue::number(grid.spacing()));
    return j;
}

JsonValue to_json(const SharpnessReport& report) {
    auto j = JsonValue::object();
    j.set("type", JsonValue::string("sharpness"));
    j.set("d", JsonValue::integer(report.d));
    j.set("m", JsonValue::integer(report.m));
    j.set("p", to_json(report.p));
    j.set("lhs", JsonValue::number(report.lhs));
    j.set("rhs_sum", JsonValue::number(report.rhs_sum));
    j.set("ratio", JsonValue::number(report.ratio));
    j.set("bound", JsonValue::number(report.bound));
    j.set("rel_gap", JsonValue::number(report.rel_gap));
    j.set("surrogate_ratio", JsonValue::number(report.surrogate_ratio));
    auto grid = JsonValue::object();
    grid.set("d", JsonValue::integer(report.d));
    grid.set("L", JsonValue::number(report.grid_half_width));
    grid.set("n", JsonValue::integer(report.grid_n));
    j.set("grid", std::move(grid));
    j.set("tolerance", JsonValue::number(report.tolerance));
    j.set("upper_bound_ok", JsonValue::boolean(report.upper_bound_ok));
    j.set("surrogate_ok", JsonValue::boolean(report.surrogate_ok));
    j.set("hilbert_case", JsonValue::boolean(report.hilbert_case));
    j.set("extremal_gap", JsonValue::number(report.extremal_gap));
    j.set("audit_note", JsonValue::string(report.audit_note));
    auto specs = JsonValue::array();
    for (const auto& s : report.specs) specs.push(JsonValue::string(s));
    j.set("specs", std::move(specs));
    return j;
}

JsonValue to_json(const GlsBoundReport& report) {
    auto j = JsonValue::object();
    j.set("type", JsonValue::string("gls_bound"));
    j.set("psi", JsonValue::string(report.psi));
    j.set("nu", JsonValue::string(report.nu));
    j.set("zeta", JsonValue::string(report.zeta));
    j.set("d", JsonValue::integer(report.d));
    j.set("m", JsonValue::integer(report.m));
    j.set("lhs", JsonValue::number(report.lhs));
    j.set("fund", JsonValue::number(report.fund));
    j.set("sum_norms", JsonValue::number(report.sum_norms));
    j.set("rhs", JsonValue::number(report.rhs));
    j.set("satisfied", JsonValue::boolean(report.satisfied));
    j.set("margin", JsonValue::number(report.margin));
    j.set("tolerance", JsonValue::number(report.tolerance));
    j.set("achieved_p", JsonValue::number(report.achieved_p));
    j.set("chain_points", JsonValue::integer(report.chain_points));
    j.set("chain_max_excess", JsonValue::number(report.chain_max_excess));
    j.set("chain_ok", JsonValue::boolean(report.chain_ok));
    j.set("trivial_factorization", JsonValue::boolean(report.trivial_factorization));
    j.set("example_bound_ok", JsonValue::boolean(report.example_bound_ok));
    return j;
}

JsonValue to_json(const ScanResult& result) {
    auto j = JsonValue::object();
    j.set("type", JsonValue::string("scan"));
    j.set("bound", JsonValue::number(result.bound));
    if (result.best_param) {
        j.set("best_param", JsonValue::number(*result.best_param));
        j.set("best_ratio", JsonValue::number(result.best_ratio));
        j.set("best_gap", JsonValue::number(result.best_gap));
    } else {
        j.set("best_param", JsonValue());
    }
    auto entries = JsonValue::array();
    for (const auto& e : result.entries) {
        auto ej = JsonValue::object();
        ej.set("param", JsonValue::number(e.param));
        if (e.report) {
            ej.set("report", to_json(*e.report));
        } else {
            ej.set("error", JsonValue::string(e.error));
        }
        entries.push(std::move(ej));
    }
    j.set("entries", std::move(entries));
    return j;
}

JsonValue to_json(const DilationIdentityReport& report) {
    auto j = JsonValue::object();
    j.set("type", JsonValue::string("dilation_identity"));
    j.set("lambda", JsonValue::number(report.lambda));
    j.set("lhs", JsonValue::number(report.lhs));
    j.set("rhs", JsonValue::number(report.rhs));
    j.set("rel_gap", JsonValue::number(report.rel_gap));
    return j;
}

JsonValue to_json(const TailReport& report) {
    auto j = JsonValue::object();
    j.set("type", JsonValue::string("tail_fit"));
    j.set("s", JsonValue::number(report.s));
    auto us = JsonValue::array();
    for (double u : report.u_grid) us.push(JsonValue::number(u));
    j.set("u_grid", std::move(us));
    auto ts = JsonValue::array();
    for (double t : report.tail_values) ts.push(JsonValue::number(t));
    j.set("tail_values", std::move(ts));
    if (report.fitted_c)
        j.set("fitted_C", JsonValue::number(*report.fitted_c));
    else
        j.set("fitted_C", JsonValue());
    j.set("vacuous", JsonValue::boolean(report.vacuous));
    return j;
}

JsonValue to_json(const GlsNormResult& result) {
    auto j = JsonValue::object();
    j.set("type", JsonValue::string("gls_norm"));
    j.set("value", JsonValue::number(result.value));
    j.set("achieved_p", JsonValue::number(result.achieved_p));
    return j;
}

JsonValue grid_function_to_json(const GridFunction& f) {
    auto j = JsonValue::object();
    j.set("type", JsonValue::string("grid_function"));
    j.set("grid", to_json(f.grid()));
    auto values = JsonValue::array();
    for (double v : f.values()) values.push(JsonValue::number(v));
    j.set("values", std::move(values));
    return j;
}

void write_grid_function_csv(std::ostream& os, const GridFunction& f) {
    const int dim = f.grid().dimension();
    for (int a = 0; a < dim; ++a) os << "x" << a << ",";
    os << "value\n";
    char buf[64];
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto pt = f.grid().point(i);
        for (int a = 0; a < dim; ++a) {
            std::snprintf(buf, sizeof(buf), "%.17g", pt[a]);
            os << buf << ",";
        }
        std::snprintf(buf, sizeof(buf), "%.17g", f[i]);
        os << buf << "\n";
    }
}

}  // namespace infconv
