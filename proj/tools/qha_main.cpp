// Command-line surface: model configuration, single-shot evaluations with
// JSON/CSV emission, the calibration report, and the verification harness.
// Exit codes: 0 success, 1 verification/numeric failure, 2 input error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qha/verify.hpp"

using json = nlohmann::ordered_json;
using qha::Complex;

namespace {

constexpr int kCacheVersion = 1;

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

// ---------------------------------------------------------------------------
// config

void reject_unknown(const json& obj, const std::vector<std::string>& allowed,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (const auto& a : allowed) ok = ok || key == a;
        if (!ok) throw qha::ConfigError("unknown key \"" + key + "\" in " + where);
    }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key))
        throw qha::ConfigError("missing required key \"" + key + "\" in " + where);
    if (!obj[key].is_number())
        throw qha::ConfigError("key \"" + key + "\" in " + where + " must be a number");
    return obj[key].get<double>();
}

qha::ModelParams parse_config(const std::string& path) {
    json cfg;
    if (path.empty()) {
        cfg = json{{"model", {{"n", 1}, {"nu", 2.5}}}};
    } else {
        std::ifstream in(path);
        if (!in) throw qha::ConfigError("cannot open config file " + path);
        try {
            cfg = json::parse(in);
        } catch (const json::parse_error& e) {
            throw qha::ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
    }
    if (!cfg.is_object()) throw qha::ConfigError("config root must be a JSON object");
    reject_unknown(cfg, {"model"}, "config root");
    if (!cfg.contains("model")) throw qha::ConfigError("missing required key \"model\"");
    const json& m = cfg["model"];
    if (!m.is_object()) throw qha::ConfigError("\"model\" must be a JSON object");
    reject_unknown(m, {"n", "nu", "rho", "truncation", "lambda_max", "rel_tol", "abs_tol"},
                   "model");

    qha::ModelParams p;
    double n = require_number(m, "n", "model");
    if (n != std::floor(n) || n < 1)
        throw qha::ConfigError("model.n must be a positive integer");
    p.n = static_cast<int>(n);
    p.nu = require_number(m, "nu", "model");
    p.rho = m.contains("rho") ? require_number(m, "rho", "model") : static_cast<double>(p.n);
    if (m.contains("truncation"))
        p.truncation = static_cast<int>(require_number(m, "truncation", "model"));
    if (m.contains("lambda_max")) p.lambda_max = require_number(m, "lambda_max", "model");
    if (m.contains("rel_tol")) p.quad.rel_tol = require_number(m, "rel_tol", "model");
    if (m.contains("abs_tol")) p.quad.abs_tol = require_number(m, "abs_tol", "model");
    try {
        p.validate();
    } catch (const qha::ParameterError& e) {
        throw qha::ConfigError(e.what());
    }
    return p;
}

// ---------------------------------------------------------------------------
// object constructors (profiles and operators from command-line specs)

std::vector<double> parse_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw qha::ConfigError(what + ": \"" + item + "\" is not a number");
        }
    }
    if (out.empty()) throw qha::ConfigError(what + ": empty list");
    return out;
}

qha::RadialProfile parse_profile(const std::string& spec, const qha::ModelParams& p) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "hpow") return qha::hpow(parse_list(arg, "hpow").at(0), p);
    if (kind == "rpow") return qha::rpow(static_cast<int>(parse_list(arg, "rpow").at(0)));
    if (kind == "indicator") return qha::indicator(parse_list(arg, "indicator").at(0), p);
    throw qha::ConfigError("unknown profile constructor \"" + kind +
                           "\" (expected hpow:sigma, rpow:k, indicator:r0)");
}

qha::RadialOperator parse_operator(const std::string& spec) {
    if (spec == "P0") return qha::RadialOperator{{Complex(1.0)}, 0};
    qha::RadialOperator A;
    for (double c : parse_list(spec, "operator coefficients")) A.coeffs.push_back(Complex(c));
    return A;
}

// an algebra-element side of `eval conv`: op:<spec> or fun:<spec>
struct Side {
    std::optional<qha::RadialProfile> fun;
    std::optional<qha::RadialOperator> op;
};

Side parse_side(const std::string& spec, const qha::ModelParams& p) {
    Side s;
    if (spec.rfind("op:", 0) == 0)
        s.op = parse_operator(spec.substr(3));
    else if (spec.rfind("fun:", 0) == 0)
        s.fun = parse_profile(spec.substr(4), p);
    else
        throw qha::ConfigError("conv sides must be op:<coeffs|P0> or fun:<constructor>");
    return s;
}

// ---------------------------------------------------------------------------
// calibration cache sidecar

std::string cache_path(const qha::ModelParams& p) {
    std::ostringstream name;
    name << "qha-cache-" << std::hex << qha::params_hash(p) << ".json";
    return name.str();
}

std::shared_ptr<const qha::PlancherelRule> load_cached_rule(const qha::ModelParams& p) {
    std::ifstream in(cache_path(p));
    if (!in) return nullptr;
    json c;
    try {
        c = json::parse(in);
    } catch (const json::parse_error&) {
        return nullptr;
    }
    if (!c.is_object() || c.value("version", -1) != kCacheVersion ||
        c.value("params_hash", std::string()) != std::to_string(qha::params_hash(p)))
        return nullptr;
    auto rule = std::make_shared<qha::PlancherelRule>();
    rule->params = p;
    rule->c_P = c["c_P"].get<double>();
    rule->lambda_max = c["lambda_max"].get<double>();
    rule->calibration_residual = c["calibration_residual"].get<double>();
    rule->nodes = c["nodes"].get<std::vector<double>>();
    rule->weights = c["weights"].get<std::vector<double>>();
    rule->h_hat_values = c["h_hat"].get<std::vector<double>>();
    if (rule->nodes.size() != rule->weights.size() ||
        rule->nodes.size() != rule->h_hat_values.size() || rule->nodes.empty())
        return nullptr;
    return rule;
}

void save_cached_rule(const qha::PlancherelRule& rule) {
    json c{{"version", kCacheVersion},
           {"params_hash", std::to_string(qha::params_hash(rule.params))},
           {"c_P", rule.c_P},
           {"lambda_max", rule.lambda_max},
           {"calibration_residual", rule.calibration_residual},
           {"nodes", rule.nodes},
           {"weights", rule.weights},
           {"h_hat", rule.h_hat_values}};
    std::ofstream out(cache_path(rule.params));
    out << c.dump() << "\n";
}

// The spectral table, from the cache sidecar when permitted and present.
qha::SpectralTable get_table(const qha::ModelParams& p, bool use_cache, int M) {
    if (use_cache) {
        if (auto rule = load_cached_rule(p)) {
            qha::SpectralTable tab;
            tab.params = p;
            tab.rule = rule;
            tab.M = M;
            for (double node : rule->nodes)
                tab.tau.push_back(
                    qha::t_lambda_eigs(p, qha::SpectralPoint{Complex(node)}, M).coeffs);
            return tab;
        }
    }
    qha::SpectralTable tab = qha::build_spectral_table(p, M);
    if (use_cache) save_cached_rule(*tab.rule);
    return tab;
}

// ---------------------------------------------------------------------------
// output assembly

struct Table {
    std::vector<std::string> columns;  // complex columns get _re/_im pairs in CSV
    std::vector<json> rows;
};

void emit(const Table& t, bool csv) {
    if (!csv) {
        json out = json::array();
        for (const auto& r : t.rows) out.push_back(r);
        std::cout << out.dump(2) << "\n";
        return;
    }
    for (size_t i = 0; i < t.columns.size(); ++i) {
        const std::string& col = t.columns[i];
        bool cplx = !t.rows.empty() && t.rows.front()[col].is_object();
        std::cout << (i ? "," : "") << (cplx ? col + "_re," + col + "_im" : col);
    }
    std::cout << "\n";
    std::cout.precision(17);
    for (const auto& r : t.rows) {
        for (size_t i = 0; i < t.columns.size(); ++i) {
            const json& v = r[t.columns[i]];
            if (i) std::cout << ",";
            if (v.is_object())
                std::cout << v["re"].get<double>() << "," << v["im"].get<double>();
            else
                std::cout << v.dump();
        }
        std::cout << "\n";
    }
}

// ---------------------------------------------------------------------------
// commands

int cmd_calibrate(const qha::ModelParams& p) {
    qha::CalibrationReport rep = qha::calibrate(p);
    json out{{"chosen_rho", rep.chosen_rho},
             {"product_defect_max", rep.product_defect_max},
             {"rejected_defect_max", rep.rejected_defect_max},
             {"c_P", rep.c_P},
             {"roundtrip_residual", rep.roundtrip_residual},
             {"integral_rep_agreement", rep.integral_rep_agreement},
             {"plancherel_residual", rep.plancherel_residual},
             {"hhat_mass_residual", rep.hhat_mass_residual},
             {"passed", rep.passed}};
    std::cout << out.dump(2) << "\n";
    return rep.passed ? 0 : 1;
}

struct EvalArgs {
    std::string what;
    std::string lambdas = "0";
    std::string radii = "0";
    std::string f_spec;
    std::string opcoeffs;
    std::string lhs, rhs;
    int j = 0;
    int M = 8;
};

Table run_eval(const EvalArgs& a, const qha::ModelParams& p, bool use_cache) {
    Table t;
    auto lam = [&] { return parse_list(a.lambdas, "--lambda"); };
    auto rad = [&] { return parse_list(a.radii, "--r"); };

    if (a.what == "phi") {
        t.columns = {"lambda", "r", "value"};
        for (double l : lam())
            for (double r : rad())
                t.rows.push_back({{"lambda", l},
                                  {"r", r},
                                  {"value", complex_json(qha::phi(
                                                p, qha::SpectralPoint{Complex(l)}, r))}});
    } else if (a.what == "sft") {
        if (a.f_spec.empty()) throw qha::ConfigError("eval sft requires --f");
        auto f = parse_profile(a.f_spec, p);
        t.columns = {"lambda", "value"};
        for (double l : lam())
            t.rows.push_back(
                {{"lambda", l},
                 {"value", complex_json(qha::sft(f, p, qha::SpectralPoint{Complex(l)}))}});
    } else if (a.what == "op-ft") {
        if (a.opcoeffs.empty()) throw qha::ConfigError("eval op-ft requires --opcoeffs");
        auto A = parse_operator(a.opcoeffs);
        t.columns = {"lambda", "value"};
        for (double l : lam())
            t.rows.push_back(
                {{"lambda", l},
                 {"value",
                  complex_json(qha::op_fourier(A, p, qha::SpectralPoint{Complex(l)}))}});
    } else if (a.what == "toeplitz-eigs") {
        if (a.f_spec.empty()) throw qha::ConfigError("eval toeplitz-eigs requires --f");
        auto T = qha::toeplitz_eigs(parse_profile(a.f_spec, p), p, a.M);
        t.columns = {"m", "value"};
        for (int m = 0; m <= a.M; ++m)
            t.rows.push_back({{"m", m}, {"value", complex_json(T.coeffs[m])}});
    } else if (a.what == "berezin") {
        if (a.opcoeffs.empty()) throw qha::ConfigError("eval berezin requires --opcoeffs");
        auto A = parse_operator(a.opcoeffs);
        t.columns = {"r", "value"};
        for (double r : rad())
            t.rows.push_back({{"r", r}, {"value", complex_json(qha::berezin(A, p, r))}});
    } else if (a.what == "conv") {
        if (a.lhs.empty() || a.rhs.empty())
            throw qha::ConfigError("eval conv requires --lhs and --rhs");
        Side L = parse_side(a.lhs, p), R = parse_side(a.rhs, p);
        auto tab = get_table(p, use_cache, a.M);
        if (L.fun && R.fun) {
            auto g = qha::conv_ff(*L.fun, *R.fun, tab);
            t.columns = {"r", "value"};
            for (double r : rad())
                t.rows.push_back({{"r", r}, {"value", complex_json(g(r))}});
        } else if (L.op && R.op) {
            auto g = qha::conv_oo(*L.op, *R.op, tab);
            t.columns = {"r", "value"};
            for (double r : rad())
                t.rows.push_back({{"r", r}, {"value", complex_json(g(r))}});
        } else {
            const auto& f = L.fun ? *L.fun : *R.fun;
            const auto& A = L.op ? *L.op : *R.op;
            auto C = qha::conv_fo(f, A, tab, a.M);
            t.columns = {"m", "value"};
            for (int m = 0; m < static_cast<int>(C.coeffs.size()); ++m)
                t.rows.push_back({{"m", m}, {"value", complex_json(C.coeffs[m])}});
        }
    } else if (a.what == "gelfand") {
        if (a.f_spec.empty() || a.opcoeffs.empty())
            throw qha::ConfigError("eval gelfand requires --f and --opcoeffs");
        auto x = qha::AlgebraElement::make(parse_profile(a.f_spec, p),
                                           parse_operator(a.opcoeffs));
        auto tab = get_table(p, use_cache, std::max(a.M, x.op.truncation()));
        t.columns = {"lambda", "j", "value"};
        for (double l : lam()) {
            qha::GelfandPoint gp{qha::SpectralPoint{Complex(l)}, a.j};
            t.rows.push_back({{"lambda", l},
                              {"j", a.j},
                              {"value", complex_json(qha::gelfand_eval(x, tab, gp))}});
        }
    } else {
        throw qha::ConfigError("unknown eval target \"" + a.what + "\"");
    }
    return t;
}

int cmd_verify(const std::string& suite, unsigned seed) {
    auto results = qha::run_checks(suite, qha::VerifyOptions{seed});
    json checks = json::array();
    bool all_pass = true;
    for (const auto& r : results) {
        checks.push_back({{"suite", r.suite},
                          {"name", r.name},
                          {"residual", r.residual},
                          {"tolerance", r.tolerance},
                          {"pass", r.pass}});
        all_pass = all_pass && r.pass;
        if (!r.pass)
            std::cerr << "FAIL [" << r.suite << "] " << r.name << ": residual " << r.residual
                      << " exceeds " << r.tolerance << "\n";
    }
    json out{{"suite", suite}, {"seed", seed}, {"checks", checks}, {"passed", all_pass}};
    std::cout << out.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial harmonic analysis on weighted Bergman spaces"};
    app.require_subcommand(1);
    std::string config_path;
    bool csv = false, no_cache = false;
    unsigned seed = 0;
    app.add_option("-c,--config", config_path, "JSON config file (model parameters)");
    app.add_flag("--csv", csv, "emit CSV instead of JSON");
    app.add_option("--seed", seed, "seed for randomized verification checks");
    app.add_flag("--no-cache", no_cache, "ignore and do not write the calibration cache");

    auto* cal = app.add_subcommand("calibrate", "run convention calibration, report JSON");
    cal->fallthrough();

    EvalArgs ea;
    auto* ev = app.add_subcommand("eval", "evaluate one operation on a grid of points");
    ev->fallthrough();
    ev->add_option("what", ea.what,
                   "one of phi|sft|op-ft|toeplitz-eigs|berezin|conv|gelfand")
        ->required();
    ev->add_option("--lambda", ea.lambdas, "comma-separated spectral parameters");
    ev->add_option("--r", ea.radii, "comma-separated radii in [0,1)");
    ev->add_option("--f", ea.f_spec, "profile constructor hpow:sigma|rpow:k|indicator:r0");
    ev->add_option("--opcoeffs", ea.opcoeffs, "comma-separated operator eigenvalues");
    ev->add_option("--lhs", ea.lhs, "conv left side, op:<coeffs|P0> or fun:<constructor>");
    ev->add_option("--rhs", ea.rhs, "conv right side, op:<coeffs|P0> or fun:<constructor>");
    ev->add_option("--j", ea.j, "Gelfand sign index (0 or 1)");
    ev->add_option("--M", ea.M, "operator truncation degree for eval outputs");

    std::string suite = "all";
    auto* vf = app.add_subcommand("verify", "run a verification suite, report JSON");
    vf->fallthrough();
    vf->add_option("suite", suite,
                   "all|specfun|spherical|transform|plancherel|operators|algebra");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // --help exits 0; any parse failure is an input error
    }

    try {
        qha::ModelParams params = parse_config(config_path);
        if (cal->parsed()) return cmd_calibrate(params);
        if (vf->parsed()) return cmd_verify(suite, seed);
        if (ea.j != 0 && ea.j != 1) throw qha::ConfigError("--j must be 0 or 1");
        Table t = run_eval(ea, params, !no_cache);
        emit(t, csv);
        return 0;
    } catch (const qha::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qha::ParameterError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qha::Error& e) {
        std::cerr << "numeric failure in " << (argc > 2 ? argv[2] : argv[1]) << ": "
                  << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
