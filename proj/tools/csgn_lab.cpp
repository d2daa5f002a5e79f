// csgn-lab: parameter classification, exact identity suite, functional
// evaluation, and scripted scans for the radial Coulomb-Sobolev
// interpolation inequality.
//
// Exit codes: 0 success / scan PASS; 1 parse or usage error;
// 2 inadmissible or degenerate parameters (also scan-kind mismatch);
// 3 quadrature non-convergence; 4 trivial or overlapping profile;
// 5 identity failure or scan FAIL.
//
// The CSGN_WORKERS environment variable bounds quadrature parallelism
// (0 or unset = auto); outputs are byte-identical for every setting.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "csgn/exactparams.hpp"
#include "csgn/experiments.hpp"
#include "csgn/functionals.hpp"
#include "csgn/profiles.hpp"

using namespace csgn;
using nlohmann::json;

namespace {

struct TupleFlags {
    std::string preset;
    std::string d, s, p, q, alpha, gamma;
};

void add_tuple_options(CLI::App* cmd, TupleFlags& f) {
    cmd->add_option("--preset", f.preset,
                    "named tuple: lions, case1, case2, thm15, rangeb");
    cmd->add_option("--d", f.d, "dimension (integer >= 1)");
    cmd->add_option("--s", f.s, "smoothness, rational in (0, 1]");
    cmd->add_option("--p", f.p, "seminorm exponent, rational >= 1");
    cmd->add_option("--q", f.q, "Coulomb exponent, rational >= 1");
    cmd->add_option("--alpha", f.alpha, "Riesz order, rational in (0, d)");
    cmd->add_option("--gamma", f.gamma, "target Lebesgue exponent, rational > 1");
}

struct QuadFlags {
    std::optional<int> gauss_order, panels, diag_levels;
    std::optional<double> tol, far_cutoff;
};

void add_quad_options(CLI::App* cmd, QuadFlags& f) {
    cmd->add_option("--gauss-order", f.gauss_order, "Gauss nodes per panel");
    cmd->add_option("--panels", f.panels, "panels per bump interval");
    cmd->add_option("--diag-levels", f.diag_levels,
                    "geometric refinement levels toward singular edges");
    cmd->add_option("--tol", f.tol, "target relative tolerance");
    cmd->add_option("--far-cutoff", f.far_cutoff,
                    "gap/width ratio beyond which a pair skips refinement");
}

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::InvalidParams, "cannot open config: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidParams,
                    std::string("bad config JSON: ") + e.what());
    }
    return j;
}

Rational field(const json& cfg, const char* key, const std::string& flag,
               const Rational& fallback) {
    if (!flag.empty()) return parse_rational(flag);
    if (cfg.contains("params") && cfg["params"].contains(key)) {
        const json& v = cfg["params"][key];
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long long>());
        throw Error(ErrorCode::InvalidParams,
                    std::string("param ") + key + " must be an exact string");
    }
    return fallback;
}

ParamTuple resolve_tuple(const json& cfg, const TupleFlags& f) {
    ParamTuple t;
    std::string preset = f.preset;
    if (preset.empty() && cfg.contains("preset"))
        preset = cfg["preset"].get<std::string>();
    if (!preset.empty()) t = preset_tuple(preset);
    if (!f.d.empty())
        t.d = static_cast<int>(to_double(parse_rational(f.d)));
    else if (cfg.contains("params") && cfg["params"].contains("d"))
        t.d = cfg["params"]["d"].get<int>();
    t.s = field(cfg, "s", f.s, t.s);
    t.p = field(cfg, "p", f.p, t.p);
    t.q = field(cfg, "q", f.q, t.q);
    t.alpha = field(cfg, "alpha", f.alpha, t.alpha);
    t.gamma = field(cfg, "gamma", f.gamma, t.gamma);
    t.validate();
    return t;
}

QuadConfig resolve_quad(const json& cfg, const QuadFlags& f) {
    QuadConfig qc;
    if (cfg.contains("quad")) {
        const json& jq = cfg["quad"];
        if (jq.contains("gauss_order")) qc.gauss_order = jq["gauss_order"];
        if (jq.contains("panels_per_bump"))
            qc.panels_per_bump = jq["panels_per_bump"];
        if (jq.contains("diagonal_refinement_levels"))
            qc.diagonal_refinement_levels = jq["diagonal_refinement_levels"];
        if (jq.contains("target_rel_tol"))
            qc.target_rel_tol = jq["target_rel_tol"];
        if (jq.contains("far_pair_cutoff"))
            qc.far_pair_cutoff = jq["far_pair_cutoff"];
    }
    if (f.gauss_order) qc.gauss_order = *f.gauss_order;
    if (f.panels) qc.panels_per_bump = *f.panels;
    if (f.diag_levels) qc.diagonal_refinement_levels = *f.diag_levels;
    if (f.tol) qc.target_rel_tol = *f.tol;
    if (f.far_cutoff) qc.far_pair_cutoff = *f.far_cutoff;
    qc.validate();
    return qc;
}

RadialProfile resolve_profile(const json& cfg, const std::string& path,
                              const std::string& inline_json) {
    if (!inline_json.empty()) return RadialProfile::from_json(inline_json);
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in)
            throw Error(ErrorCode::InvalidParams,
                        "cannot open profile: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return RadialProfile::from_json(buf.str());
    }
    if (cfg.contains("profile"))
        return RadialProfile::from_json(cfg["profile"].dump());
    return RadialProfile({{1.0, 10.0, 1.0}});  // documented default bump
}

int error_exit(const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
        case ErrorCode::InvalidParams:
            return 1;
        case ErrorCode::TrivialProfile:
        case ErrorCode::OverlappingSupports:
            return 4;
        default:
            return 2;
    }
}

std::string verdict_json(const ParamTuple& t) {
    const TheoremVerdict v = theorem_verdicts(t);
    std::ostringstream os;
    os << "{\"thm13\": \"" << thm13_name(v.thm13) << "\", \"thm14\": \""
       << thm14_name(v.thm14) << "\", \"thm15\": \"" << thm15_name(v.thm15)
       << "\", \"radial_value\": \"" << rational_to_string(v.radial_value)
       << "\", \"nonradial_value\": \""
       << rational_to_string(v.nonradial_value) << "\"}";
    return os.str();
}

int cmd_classify(const ParamTuple& t) {
    const DerivedParams dp = derive(t);
    const RangeClass rc = classify(t);
    std::ostringstream os;
    os << "{\"D\": \"" << rational_to_string(dp.D) << "\", \"beta1\": \""
       << rational_to_string(dp.beta1) << "\", \"beta2\": \""
       << rational_to_string(dp.beta2) << "\", \"gamma_rad\": \""
       << rational_to_string(dp.gamma_rad) << "\", \"gamma_cs\": \""
       << rational_to_string(dp.gamma_cs) << "\", \"beta_sum_gamma\": \""
       << rational_to_string((dp.beta1 + dp.beta2) * t.gamma)
       << "\", \"range\": \"" << range_class_name(rc)
       << "\", \"verdicts\": " << verdict_json(t) << "}";
    std::cout << os.str() << "\n";
    return rc == RangeClass::Inadmissible ? 2 : 0;
}

int cmd_identities(const ParamTuple& t, const std::string& eps_str,
                   int random_n, std::uint64_t seed) {
    bool all_ok = true;
    if (random_n > 0) {
        TupleSampler gen(seed);
        int failures = 0;
        for (int i = 0; i < random_n; ++i) {
            const ParamTuple rt = gen.next();
            const IdentityReport rep = identity_suite(rt, gen.next_epsilon(rt));
            if (!rep.all_passed()) ++failures;
        }
        all_ok = failures == 0;
        std::cout << "{\"mode\": \"random\", \"tuples\": " << random_n
                  << ", \"seed\": " << seed << ", \"failures\": " << failures
                  << ", \"all_passed\": " << (all_ok ? "true" : "false")
                  << "}\n";
    } else {
        const Rational eps = eps_str.empty() ? epsilon_window(t) / 2
                                             : parse_rational(eps_str);
        const IdentityReport rep = identity_suite(t, eps);
        all_ok = rep.all_passed();
        std::ostringstream os;
        os << "{\"eps\": \"" << rational_to_string(eps)
           << "\", \"all_passed\": " << (all_ok ? "true" : "false")
           << ", \"results\": [";
        for (std::size_t i = 0; i < rep.results.size(); ++i) {
            const IdentityResult& r = rep.results[i];
            os << (i ? ", " : "") << "{\"name\": \"" << r.name
               << "\", \"status\": \""
               << (r.status == IdentityStatus::Pass     ? "pass"
                   : r.status == IdentityStatus::Fail   ? "fail"
                                                        : "skipped")
               << "\", \"note\": \"" << r.note << "\"}";
        }
        os << "]}";
        std::cout << os.str() << "\n";
    }
    return all_ok ? 0 : 5;
}

int cmd_eval(const ParamTuple& t, const RadialProfile& g,
             const QuadConfig& qc) {
    if (classify(t) == RangeClass::Inadmissible) {
        std::cerr << "error: tuple is inadmissible (a beta exponent is not "
                     "positive)\n";
        return 2;
    }
    const FunctionalReport rep = quotient(g, t, derive(t), qc);
    std::cout << rep.to_json() << "\n";
    return rep.all_converged() ? 0 : 3;
}

int cmd_scan(const ScanSpec& spec, const std::string& csv_path) {
    std::string csv, summary;
    bool pass = true, converged = true;
    switch (spec.kind) {
        case ScanKind::SingleBumpR:
        case ScanKind::MultiBumpM: {
            const FunctionalScanResult r = blowup_scan(spec);
            csv = r.csv();
            summary = r.json_summary();
            pass = r.pass;
            converged = r.all_converged();
            break;
        }
        case ScanKind::Boundedness: {
            const FunctionalScanResult r = boundedness_scan(spec);
            csv = r.csv();
            summary = r.json_summary();
            pass = r.pass;
            converged = r.all_converged();
            break;
        }
        case ScanKind::StraussRatio: {
            const RatioScanResult r = strauss_ratio_scan(spec);
            csv = r.csv();
            summary = r.json_summary();
            pass = r.pass;
            for (const RatioRow& row : r.rows) converged &= row.converged;
            break;
        }
        case ScanKind::RuizRatio: {
            const RuizScanResult r = ruiz_ratio_scan(spec);
            csv = r.csv();
            summary = r.json_summary();
            pass = r.pass;
            for (const RuizRow& row : r.rows) converged &= row.converged;
            break;
        }
    }
    std::cout << summary << "\n";
    if (csv_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out)
            throw Error(ErrorCode::InvalidParams,
                        "cannot write CSV: " + csv_path);
        out << csv;
    }
    if (!converged) return 3;
    return pass ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Desk-scale verification laboratory for a radial interpolation "
        "inequality between a fractional Sobolev seminorm and a Coulomb "
        "energy"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path,
                   "JSON config file; command-line flags override it");

    TupleFlags tf_classify, tf_ident, tf_eval, tf_scan;
    QuadFlags qf_eval, qf_scan;

    CLI::App* c_classify =
        app.add_subcommand("classify", "derived exponents, range, verdicts");
    add_tuple_options(c_classify, tf_classify);

    CLI::App* c_ident =
        app.add_subcommand("identities", "exact rational identity suite");
    add_tuple_options(c_ident, tf_ident);
    std::string eps_str;
    int random_n = 0;
    std::uint64_t seed = 7;
    c_ident->add_option("--eps", eps_str,
                        "epsilon (rational); default: half the branch window");
    c_ident->add_option("--random", random_n,
                        "run the suite on N sampled tuples instead");
    c_ident->add_option("--seed", seed, "sampler seed for --random");

    CLI::App* c_eval =
        app.add_subcommand("eval", "functionals and quotient of a profile");
    add_tuple_options(c_eval, tf_eval);
    add_quad_options(c_eval, qf_eval);
    std::string profile_path, profile_inline;
    c_eval->add_option("--profile", profile_path,
                       "profile JSON file {\"bumps\": [{lambda, R, S}...]}");
    c_eval->add_option("--bumps", profile_inline, "inline profile JSON");

    CLI::App* c_scan = app.add_subcommand("scan", "parameter scans");
    add_tuple_options(c_scan, tf_scan);
    add_quad_options(c_scan, qf_scan);
    std::string kind_str = "blowup", grid_str, csv_path;
    double lambda = 1.0, S = 1.0, multibump_R = 10.0, ruiz_eps = 0.1,
           ruiz_R0 = 1.0;
    c_scan->add_option(
        "--kind", kind_str,
        "blowup | multibump | boundedness | strauss | ruiz");
    c_scan->add_option("--grid", grid_str,
                       "comma-separated scan values (default per kind)");
    c_scan->add_option("--csv", csv_path,
                       "CSV output path (default: standard output)");
    c_scan->add_option("--lambda", lambda, "bump amplitude");
    c_scan->add_option("--S", S, "bump half-width of the blow-up family");
    c_scan->add_option("--multibump-R", multibump_R,
                       "geometric base of the multi-bump family");
    c_scan->add_option("--eps", ruiz_eps, "Ruiz epsilon");
    c_scan->add_option("--R0", ruiz_R0,
                       "Ruiz split radius factor (boundary = R0 * R)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        const json cfg = load_config(config_path);
        if (c_classify->parsed())
            return cmd_classify(resolve_tuple(cfg, tf_classify));
        if (c_ident->parsed())
            return cmd_identities(resolve_tuple(cfg, tf_ident), eps_str,
                                  random_n, seed);
        if (c_eval->parsed())
            return cmd_eval(resolve_tuple(cfg, tf_eval),
                            resolve_profile(cfg, profile_path, profile_inline),
                            resolve_quad(cfg, qf_eval));
        // scan
        ScanSpec spec;
        spec.kind = parse_scan_kind(
            !c_scan->count("--kind") && cfg.contains("kind")
                ? cfg["kind"].get<std::string>()
                : kind_str);
        spec.params = resolve_tuple(cfg, tf_scan);
        spec.quad = resolve_quad(cfg, qf_scan);
        if (!grid_str.empty()) {
            std::stringstream ss(grid_str);
            std::string tok;
            while (std::getline(ss, tok, ','))
                spec.grid.push_back(std::stod(tok));
        } else if (cfg.contains("grid")) {
            spec.grid = cfg["grid"].get<std::vector<double>>();
        } else {
            spec.grid = default_grid(spec.kind);
        }
        spec.lambda = lambda;
        spec.S = S;
        spec.multibump_R = multibump_R;
        spec.ruiz_eps = ruiz_eps;
        spec.ruiz_R0 = ruiz_R0;
        return cmd_scan(spec, csv_path);
    } catch (const Error& e) {
        return error_exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
