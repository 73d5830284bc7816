// Command-line front end: parses a subcommand, runs the computation, and
// writes a JSON (or CSV) report. Exit codes: 0 success, 2 configuration
// error, 1 computation error, 3 when `verify` finds a violated inequality.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "infconv/catalog.hpp"
#include "infconv/convolution.hpp"
#include "infconv/errors.hpp"
#include "infconv/gls.hpp"
#include "infconv/grid.hpp"
#include "infconv/harness.hpp"
#include "infconv/json_writer.hpp"
#include "infconv/norms.hpp"
#include "infconv/report_json.hpp"

namespace {

constexpr const char* kToolVersion = "1.0.0";

using namespace infconv;

std::size_t node_cap_from_env() {
    const char* raw = std::getenv("INFCONV_NODE_CAP");
    if (raw == nullptr) return kDefaultNodeCap;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0)
        throw InvalidArgument("INFCONV_NODE_CAP must be a positive integer, got '" +
                              std::string(raw) + "'");
    return static_cast<std::size_t>(v);
}

struct GridFlags {
    int d = 1;
    double half_width = 6.0;
    int n = 1025;

    void attach(CLI::App* cmd) {
        cmd->add_option("--d", d, "grid dimension (1-3)")->capture_default_str();
        cmd->add_option("--L", half_width, "grid half-width, domain [-L, L]^d")
            ->capture_default_str();
        cmd->add_option("--n", n, "odd node count per axis")->capture_default_str();
    }
    GridSpec build() const { return make_grid(d, half_width, n, node_cap_from_env()); }
    JsonValue to_config() const {
        auto j = JsonValue::object();
        j.set("d", JsonValue::integer(d));
        j.set("L", JsonValue::number(half_width));
        j.set("n", JsonValue::integer(n));
        return j;
    }
};

PExponent parse_exponent(const std::string& text) {
    if (text == "inf") return PExponent::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return PExponent::finite(v);
    } catch (const std::exception&) {
        throw InvalidArgument("--p expects a real >= 1 or 'inf', got '" + text + "'");
    }
}

Engine parse_engine(const std::string& text) {
    if (text == "reference") return Engine::Reference;
    if (text == "parallel") return Engine::Parallel;
    if (text == "separable") return Engine::Separable;
    throw InvalidArgument("--engine expects reference|parallel|separable, got '" +
                          text + "'");
}

std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size())
            throw InvalidArgument("bad numeric list entry '" + item + "'");
    }
    if (out.empty()) throw InvalidArgument("empty value list");
    return out;
}

struct SamplingFlags {
    double p_min = 0.0;  // 0 means "derive from the generating function"
    double p_max = 0.0;
    int count = 33;
    std::string spacing = "log";

    void attach(CLI::App* cmd) {
        cmd->add_option("--p-min", p_min, "sampling lower exponent (default: domain start)");
        cmd->add_option("--p-max", p_max, "sampling upper exponent (default: min(domain end, 256))");
        cmd->add_option("--p-count", count, "sampling point count")->capture_default_str();
        cmd->add_option("--p-spacing", spacing, "sampling spacing: log|linear")
            ->capture_default_str();
    }
    PSampling build(const GeneratingFunction& gf) const {
        if (gf.is_degenerate()) {
            // Single effective exponent; the sampling is bypassed downstream.
            const double r = gf.degenerate_point();
            return PSampling(r, r + 1.0, 2, PSampling::Spacing::Linear);
        }
        const double lo = p_min > 0.0 ? p_min : gf.lower();
        const double hi = p_max > 0.0 ? p_max : std::min(gf.upper(), kExponentCap);
        PSampling::Spacing sp;
        if (spacing == "log")
            sp = PSampling::Spacing::Log;
        else if (spacing == "linear")
            sp = PSampling::Spacing::Linear;
        else
            throw InvalidArgument("--p-spacing expects log|linear, got '" + spacing + "'");
        return PSampling(lo, hi, count, sp);
    }
    JsonValue to_config(const PSampling& s) const {
        auto j = JsonValue::object();
        j.set("p_min", JsonValue::number(s.p_min()));
        j.set("p_max", JsonValue::number(s.p_max()));
        j.set("count", JsonValue::integer(s.count()));
        j.set("spacing", JsonValue::string(
                             s.spacing() == PSampling::Spacing::Log ? "log" : "linear"));
        return j;
    }
};

void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw InvalidArgument("cannot open output path '" + out_path + "'");
    os << payload;
}

JsonValue top_level(const std::string& command, JsonValue config, JsonValue reports,
                    long long seed) {
    auto j = JsonValue::object();
    j.set("command", JsonValue::string(command));
    j.set("config", std::move(config));
    j.set("reports", std::move(reports));
    j.set("tool_version", JsonValue::string(kToolVersion));
    j.set("seed", JsonValue::integer(seed));
    return j;
}

struct CliOptions {
    // shared
    long long seed = 24301;
    std::string format = "json";
    std::string out_path;
    std::string engine = "parallel";

    // conv / norm / verify / scan
    GridFlags grid;
    std::vector<std::string> spec_texts;
    std::string p_text = "2";

    // norm extras
    std::string tail_u_text;
    double tail_s = 2.0;
    double dilation_lambda = 0.0;

    // gls
    std::string psi_text = "power:s=2";
    SamplingFlags sampling;
    double delta = 1.0;

    // verify
    std::string theorem = "2.1";
    int m = 2;
    std::string factor_num;
    std::string factor_den;
    bool inject_violation = false;

    // scan
    std::string family_text;
    std::string values_text;
};

std::vector<FunctionSpec> parse_specs(const std::vector<std::string>& texts) {
    std::vector<FunctionSpec> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(parse_function_spec(t));
    return out;
}

JsonValue specs_config(const std::vector<FunctionSpec>& specs) {
    auto arr = JsonValue::array();
    for (const auto& s : specs) arr.push(JsonValue::string(s.to_string()));
    return arr;
}

int run_conv(const CliOptions& opt) {
    const GridSpec grid = opt.grid.build();
    const auto specs = parse_specs(opt.spec_texts);
    if (specs.empty()) throw InvalidArgument("conv: at least one --spec is required");
    const Engine engine = parse_engine(opt.engine);

    GridFunction result = [&] {
        if (engine == Engine::Separable) return convolve_fold_separable(specs, grid);
        std::vector<GridFunction> fs;
        for (const auto& s : specs) fs.push_back(sample(s, grid));
        if (engine == Engine::Reference) {
            GridFunction acc = fs[0];
            for (std::size_t j = 1; j < fs.size(); ++j)
                acc = reference::convolve_pair(acc, fs[j]);
            return acc;
        }
        return convolve_fold(fs);
    }();

    if (opt.format == "csv") {
        std::ostringstream os;
        write_grid_function_csv(os, result);
        write_output(opt.out_path, os.str());
        return 0;
    }
    auto config = opt.grid.to_config();
    config.set("specs", specs_config(specs));
    config.set("engine", JsonValue::string(opt.engine));
    auto reports = JsonValue::array();
    reports.push(grid_function_to_json(result));
    write_output(opt.out_path,
                 top_level("conv", std::move(config), std::move(reports), opt.seed).dump());
    return 0;
}

int run_norm(const CliOptions& opt) {
    const GridSpec grid = opt.grid.build();
    const auto specs = parse_specs(opt.spec_texts);
    if (specs.size() != 1) throw InvalidArgument("norm: exactly one --spec is required");
    const PExponent p = parse_exponent(opt.p_text);

    auto config = opt.grid.to_config();
    config.set("spec", JsonValue::string(specs[0].to_string()));
    config.set("p", to_json(p));
    auto reports = JsonValue::array();

    const auto f = sample(specs[0], grid);
    auto norm_report = JsonValue::object();
    norm_report.set("type", JsonValue::string("lp_norm"));
    norm_report.set("p", to_json(p));
    norm_report.set("value", JsonValue::number(lp_norm(f, p)));
    reports.push(std::move(norm_report));

    if (!opt.tail_u_text.empty()) {
        const auto us = parse_value_list(opt.tail_u_text);
        reports.push(to_json(subgaussian_fit(f, opt.tail_s, us)));
        config.set("tail_s", JsonValue::number(opt.tail_s));
    }
    if (opt.dilation_lambda > 0.0) {
        reports.push(to_json(
            dilation_norm_identity_check(specs[0], opt.dilation_lambda, p, grid)));
        config.set("dilation_lambda", JsonValue::number(opt.dilation_lambda));
    }
    write_output(opt.out_path,
                 top_level("norm", std::move(config), std::move(reports), opt.seed).dump());
    return 0;
}

int run_glsnorm(const CliOptions& opt) {
    const GridSpec grid = opt.grid.build();
    const auto specs = parse_specs(opt.spec_texts);
    if (specs.size() != 1)
        throw InvalidArgument("glsnorm: exactly one --spec is required");
    const auto psi = parse_generating_function(opt.psi_text);
    const PSampling sampling = opt.sampling.build(psi);

    const auto result = gls_norm(sample(specs[0], grid), psi, sampling);
    auto config = opt.grid.to_config();
    config.set("spec", JsonValue::string(specs[0].to_string()));
    config.set("psi", JsonValue::string(psi.to_string()));
    config.set("sampling", opt.sampling.to_config(sampling));
    auto reports = JsonValue::array();
    reports.push(to_json(result));
    write_output(
        opt.out_path,
        top_level("glsnorm", std::move(config), std::move(reports), opt.seed).dump());
    return 0;
}

int run_fundamental(const CliOptions& opt) {
    const auto psi = parse_generating_function(opt.psi_text);
    const double value = fundamental_function(psi, opt.delta);
    auto config = JsonValue::object();
    config.set("psi", JsonValue::string(psi.to_string()));
    config.set("delta", JsonValue::number(opt.delta));
    auto reports = JsonValue::array();
    auto r = JsonValue::object();
    r.set("type", JsonValue::string("fundamental_function"));
    r.set("delta", JsonValue::number(opt.delta));
    r.set("value", JsonValue::number(value));
    reports.push(std::move(r));
    write_output(
        opt.out_path,
        top_level("fundamental", std::move(config), std::move(reports), opt.seed).dump());
    return 0;
}

int run_verify(const CliOptions& opt) {
    const GridSpec grid = opt.grid.build();
    const Engine engine = parse_engine(opt.engine);
    auto config = opt.grid.to_config();
    config.set("theorem", JsonValue::string(opt.theorem));
    config.set("m", JsonValue::integer(opt.m));
    config.set("engine", JsonValue::string(opt.engine));
    auto reports = JsonValue::array();
    bool violated = false;

    if (opt.theorem == "2.1") {
        auto spec_texts = opt.spec_texts;
        if (spec_texts.empty()) spec_texts.push_back("gaussian");
        if (spec_texts.size() != 1)
            throw InvalidArgument("verify --theorem 2.1 takes one --spec (m copies)");
        const auto specs = parse_specs(spec_texts);
        const PExponent p = parse_exponent(opt.p_text);
        config.set("spec", JsonValue::string(specs[0].to_string()));
        config.set("p", to_json(p));
        const auto report = verify_sharp_constant(specs[0], opt.m, p, grid, engine);
        violated = !report.upper_bound_ok || !report.surrogate_ok;
        reports.push(to_json(report));
    } else if (opt.theorem == "4.1") {
        auto spec_texts = opt.spec_texts;
        if (spec_texts.empty()) spec_texts.push_back("gaussian");
        std::vector<FunctionSpec> specs;
        if (spec_texts.size() == 1) {
            specs.assign(static_cast<std::size_t>(opt.m),
                         parse_function_spec(spec_texts[0]));
        } else {
            specs = parse_specs(spec_texts);
        }
        const auto psi = parse_generating_function(opt.psi_text);
        FactorStrategy strategy = TrivialFactorization{};
        if (!opt.factor_num.empty() || !opt.factor_den.empty()) {
            if (opt.factor_num.empty() || opt.factor_den.empty())
                throw InvalidArgument(
                    "verify: --factor-num and --factor-den must be given together");
            strategy = GivenFactorization{parse_generating_function(opt.factor_num),
                                          parse_generating_function(opt.factor_den)};
        }
        const PSampling sampling = opt.sampling.build(psi);
        config.set("psi", JsonValue::string(psi.to_string()));
        config.set("specs", specs_config(specs));
        config.set("sampling", opt.sampling.to_config(sampling));
        const auto report = verify_gls_bound(specs, psi, strategy, grid, sampling, engine);
        violated = !report.satisfied || !report.chain_ok;
        reports.push(to_json(report));
    } else {
        throw InvalidArgument("verify: --theorem expects 2.1 or 4.1, got '" +
                              opt.theorem + "'");
    }

    if (opt.inject_violation) {
        // Self-test fixture: a synthetic violated report so CI can confirm
        // the nonzero exit path end to end.
        auto fake = JsonValue::object();
        fake.set("type", JsonValue::string("injected_violation"));
        fake.set("upper_bound_ok", JsonValue::boolean(false));
        fake.set("note", JsonValue::string("synthetic bound violation fixture"));
        reports.push(std::move(fake));
        violated = true;
    }

    write_output(
        opt.out_path,
        top_level("verify", std::move(config), std::move(reports), opt.seed).dump());
    return violated ? 3 : 0;
}

int run_scan(const CliOptions& opt) {
    const GridSpec grid = opt.grid.build();
    if (opt.family_text.find('?') == std::string::npos)
        throw InvalidArgument("scan: --family must contain a '?' placeholder");
    const auto params = parse_value_list(opt.values_text);
    const PExponent p = parse_exponent(opt.p_text);
    const Engine engine = parse_engine(opt.engine);

    auto family = [&](double value) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", value);
        std::string text = opt.family_text;
        text.replace(text.find('?'), 1, buf);
        return parse_function_spec(text);
    };
    // Validate the template eagerly so a malformed family is a config error.
    (void)family(params[0]);

    const auto result = scan_ratio(family, params, opt.m, p, grid, engine);
    auto config = opt.grid.to_config();
    config.set("family", JsonValue::string(opt.family_text));
    auto values = JsonValue::array();
    for (double v : params) values.push(JsonValue::number(v));
    config.set("values", std::move(values));
    config.set("m", JsonValue::integer(opt.m));
    config.set("p", to_json(p));
    auto reports = JsonValue::array();
    reports.push(to_json(result));
    write_output(opt.out_path,
                 top_level("scan", std::move(config), std::move(reports), opt.seed).dump());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"min-plus (infimal) convolution and function-space norm toolkit"};
    app.require_subcommand(1);
    CliOptions opt;

    auto add_common = [&](CLI::App* cmd, bool with_grid) {
        cmd->add_option("--seed", opt.seed, "seed recorded in the report")
            ->capture_default_str();
        cmd->add_option("--format", opt.format, "output format: json|csv")
            ->capture_default_str();
        cmd->add_option("--out", opt.out_path, "output path (default: stdout)");
        if (with_grid) opt.grid.attach(cmd);
    };

    CLI::App* conv = app.add_subcommand("conv", "min-plus convolution of catalog functions");
    add_common(conv, true);
    conv->add_option("--spec", opt.spec_texts, "function spec (repeatable, folded in order)");
    conv->add_option("--engine", opt.engine, "reference|parallel|separable")
        ->capture_default_str();

    CLI::App* norm = app.add_subcommand("norm", "quadrature norm of a catalog function");
    add_common(norm, true);
    norm->add_option("--spec", opt.spec_texts, "function spec");
    norm->add_option("--p", opt.p_text, "exponent, real >= 1 or 'inf'")
        ->capture_default_str();
    norm->add_option("--tail-u", opt.tail_u_text,
                     "ascending thresholds >= 1 for a tail fit (comma separated)");
    norm->add_option("--tail-s", opt.tail_s, "tail fit exponent")->capture_default_str();
    norm->add_option("--dilation-lambda", opt.dilation_lambda,
                     "also check the dilation norm identity at this lambda");

    CLI::App* glsnorm = app.add_subcommand("glsnorm", "grand-Lebesgue norm of a catalog function");
    add_common(glsnorm, true);
    glsnorm->add_option("--spec", opt.spec_texts, "function spec");
    glsnorm->add_option("--psi", opt.psi_text, "generating function")->capture_default_str();
    opt.sampling.attach(glsnorm);

    CLI::App* fundamental =
        app.add_subcommand("fundamental", "fundamental function of a generating function");
    add_common(fundamental, false);
    fundamental->add_option("--psi", opt.psi_text, "generating function")
        ->capture_default_str();
    fundamental->add_option("--delta", opt.delta, "argument, >= 0")->capture_default_str();

    CLI::App* verify = app.add_subcommand("verify", "check the norm inequalities; exit 3 on violation");
    add_common(verify, true);
    verify->add_option("--theorem", opt.theorem, "which bound family: 2.1|4.1")
        ->capture_default_str();
    verify->add_option("--spec", opt.spec_texts, "function spec (repeatable for 4.1)");
    verify->add_option("--m", opt.m, "number of folded terms")->capture_default_str();
    verify->add_option("--p", opt.p_text, "exponent for 2.1")->capture_default_str();
    verify->add_option("--psi", opt.psi_text, "generating function for 4.1")
        ->capture_default_str();
    verify->add_option("--factor-num", opt.factor_num, "numerator of a given factorization");
    verify->add_option("--factor-den", opt.factor_den, "denominator of a given factorization");
    verify->add_option("--engine", opt.engine, "reference|parallel|separable")
        ->capture_default_str();
    verify->add_flag("--inject-violation", opt.inject_violation,
                     "append a synthetic violated report (self-test fixture)");
    opt.sampling.attach(verify);

    CLI::App* scan = app.add_subcommand("scan", "one-parameter family scan of the norm ratio");
    add_common(scan, true);
    scan->add_option("--family", opt.family_text,
                     "spec template with a '?' placeholder, e.g. trunc-quadratic:c=?,R=6");
    scan->add_option("--values", opt.values_text, "comma-separated parameter values");
    scan->add_option("--m", opt.m, "number of folded copies")->capture_default_str();
    scan->add_option("--p", opt.p_text, "exponent")->capture_default_str();
    scan->add_option("--engine", opt.engine, "reference|parallel|separable")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11 prints help itself; map real parse failures to exit 2.
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    // Configuration problems (bad specs, bad grids, bad flag values) exit 2
    // before any computation output; computation failures exit 1.
    try {
        if (conv->parsed()) return run_conv(opt);
        if (norm->parsed()) return run_norm(opt);
        if (glsnorm->parsed()) return run_glsnorm(opt);
        if (fundamental->parsed()) return run_fundamental(opt);
        if (verify->parsed()) return run_verify(opt);
        if (scan->parsed()) return run_scan(opt);
    } catch (const ParseError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidGrid& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const GridTooLarge& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidGeneratingFunction& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
