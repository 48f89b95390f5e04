#include "cli/commands.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "cli/report.hpp"
#include "rsl/asymptotics.hpp"
#include "rsl/catalog.hpp"
#include "rsl/error.hpp"
#include "rsl/format.hpp"
#include "rsl/inverse.hpp"
#include "rsl/nodal.hpp"
#include "rsl/parallel.hpp"
#include "rsl/spectrum.hpp"
#include "rsl/trace.hpp"

namespace rsl::cli {

namespace {

constexpr double kPi = std::numbers::pi;
using nlohmann::json;

void log(const char* level, const std::string& code, const std::string& message) {
    std::string flat = message;
    for (char& c : flat) {
        if (c == '\n' || c == '\r') c = ' ';
    }
    std::cerr << level << ' ' << code << ' ' << flat << '\n';
}

struct Options {
    std::string config;
    std::string out;
    int jobs = 0;
    std::optional<int> n_min;
    std::optional<int> n_max;
    std::optional<double> u_plus_zero;
    std::string format = "csv";
};

// Thrown inside a command to leave with a specific exit code.
struct Exit {
    int code;
};

class Runner {
public:
    Runner(RunConfig cfg, const Options& opt) : cfg_(std::move(cfg)), opt_(opt) {
        if (!opt.out.empty()) cfg_.output = opt.out;
        if (opt.jobs > 0) cfg_.jobs = opt.jobs;
        if (opt.n_min) cfg_.n_min = *opt.n_min;
        if (opt.n_max) cfg_.n_max = *opt.n_max;
        if (opt.u_plus_zero) cfg_.u_plus_zero = *opt.u_plus_zero;
        if (cfg_.n_min < 0 || cfg_.n_max < cfg_.n_min) throw ConfigError("--n-min/--n-max", "need 0 <= n_min <= n_max");
    }

    int validate_only() {
        const auto rep = check();
        json doc;
        doc["pass"] = rep.pass;
        doc["violations"] = findings(rep.violations);
        doc["warnings"] = findings(rep.warnings);
        emit_json("validation.json", doc);
        return rep.pass ? kExitOk : kExitValidation;
    }

    int spectrum() {
        require_valid();
        const auto sw = sweep_spectrum(cfg_.problem, cfg_.n_min, cfg_.n_max, cfg_.solver, cfg_.jobs);
        for (const auto& d : sw.diagnostics) log("WARN", "spectrum_diagnostic", d);
        Table t{{"sign", "n", "mu_seed", "mu_estimate", "mu_re", "mu_im", "residual", "method", "iters"}, {}};
        bool ok = true;
        for (const auto& r : sw.records) {
            ok = ok && r.converged;
            t.rows.push_back({std::string(r.index.sign > 0 ? "+" : "-"), static_cast<long long>(r.index.magnitude),
                              r.seed, r.estimate, r.root.real(), r.root.imag(), r.residual,
                              std::string(method_name(r.method)), static_cast<long long>(r.iterations)});
        }
        emit_table("spectrum", t);
        return ok ? kExitOk : kExitNumeric;
    }

    int trace() {
        require_valid();
        const int n = cfg_.n_max;
        const auto sw = sweep_spectrum(cfg_.problem, 0, n, cfg_.solver, cfg_.jobs);
        for (const auto& d : sw.diagnostics) log("WARN", "spectrum_diagnostic", d);
        TraceReport rep;
        try {
            rep = trace_partial_sums(cfg_.problem, sw.records, n);
        } catch (const std::invalid_argument& e) {
            log("ERROR", "non_convergence", e.what());
            return kExitNumeric;
        }
        for (const auto& d : rep.diagnostics) log("INFO", "trace_diagnostic", d);
        Table sums{{"N", "partial_sum", "rhs", "abs_gap"}, {}};
        for (std::size_t k = 0; k < rep.partial_sums.size(); ++k) {
            sums.rows.push_back({static_cast<long long>(k), rep.partial_sums[k], rep.rhs,
                                 std::abs(rep.partial_sums[k] - rep.rhs)});
        }
        Table terms{{"n", "mu_sq", "mu0_sq", "correction", "term"}, {}};
        for (const auto& tt : rep.terms) {
            terms.rows.push_back({static_cast<long long>(tt.sign * tt.n), tt.mu_sq, tt.mu0_sq, tt.correction, tt.term});
        }
        emit_table("trace", sums);
        emit_table("trace_terms", terms);
        return kExitOk;
    }

    int nodal() {
        require_valid();
        const auto sets = nodal_sets();
        Table t{{"n", "j", "t_numeric", "t_asymptotic", "abs_gap"}, {}};
        for (const auto& ns : sets) {
            for (const auto& d : ns.diagnostics) log("WARN", "nodal_diagnostic", ns.index.str() + " " + d);
            const int n = ns.index.magnitude;
            for (std::size_t j = 1; j <= ns.nodes.size(); ++j) {
                const double num = ns.nodes[j - 1];
                if (static_cast<int>(j) <= n && ns.mu0 != 0.0) {
                    const double as = nodal_asymptotic(cfg_.problem, ns.index, static_cast<int>(j));
                    t.rows.push_back({static_cast<long long>(n), static_cast<long long>(j), num, as, std::abs(num - as)});
                } else {
                    t.rows.push_back({static_cast<long long>(n), static_cast<long long>(j), num, Cell{}, Cell{}});
                }
            }
        }
        emit_table("nodal", t);
        return kExitOk;
    }

    int limitfn() {
        require_valid();
        const auto branch = branch_or_fail();
        const auto est = estimate();
        Table t{{"t", "node_t", "f_hat", "f_exact", "gap"}, {}};
        for (std::size_t i = 0; i < est.grid.size(); ++i) {
            t.rows.push_back({est.grid[i], est.node_t[i], est.f_hat[i],
                              limit_function_exact(cfg_.problem, est.grid[i]), static_cast<long long>(est.gap[i])});
        }
        log("INFO", "limit_branch", std::string(branch_name(branch)));
        emit_table("limitfn", t);
        return kExitOk;
    }

    int reconstruct() {
        require_valid();
        if (branch_or_fail() != LimitBranch::DelayZero) {
            throw ConfigError("/problem/delay", "reconstruction needs an identically zero delay");
        }
        if (!cfg_.u_plus_zero) throw ConfigError("/inverse/u_plus_zero", "required (or pass --u-plus-zero)");
        const auto est = estimate();
        const auto rec = reconstruct_potential(est, *cfg_.u_plus_zero);
        Table t{{"t", "f_hat", "q_hat", "q_true"}, {}};
        for (std::size_t i = 0; i < rec.grid.size(); ++i) {
            Cell truth;
            try {
                truth = cfg_.problem.q(rec.grid[i]);
            } catch (const std::exception&) {
            }
            t.rows.push_back({rec.grid[i], est.f_hat[i], rec.q_hat[i], truth});
        }
        emit_table("reconstruction", t);
        return kExitOk;
    }

private:
    static json findings(const std::vector<Finding>& fs) {
        auto arr = json::array();
        for (const auto& f : fs) {
            json o;
            o["rule"] = f.rule;
            o["t"] = f.t ? json_number(*f.t) : json(nullptr);
            o["message"] = f.message;
            arr.push_back(o);
        }
        return arr;
    }

    ValidationReport check() {
        auto rep = validate(cfg_.problem);
        for (const auto& v : rep.violations) log("ERROR", v.rule, v.message + (v.t ? " at t=" + fmt12(*v.t) : ""));
        for (const auto& w : rep.warnings) log("WARN", w.rule, w.message + (w.t ? " at t=" + fmt12(*w.t) : ""));
        return rep;
    }

    void require_valid() {
        if (!check().pass) throw Exit{kExitValidation};
    }

    LimitBranch branch_or_fail() {
        try {
            return limit_branch(cfg_.problem);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("/problem/delay", e.what());
        }
    }

    EigenvalueRecord eigenvalue(int n) {
        const auto idx = SpectralIndex::pos(n);
        if (n >= 2) return find_eigenvalue(cfg_.problem, idx, cfg_.solver);
        const auto scan = scan_small_roots(cfg_.problem, cfg_.solver, 2.5, cfg_.jobs);
        for (const auto& r : scan.records) {
            if (r.index == idx) return r;
        }
        EigenvalueRecord none;
        none.index = idx;
        return none;
    }

    std::vector<NodalSet> nodal_sets() {
        const auto recs = parallel_map(cfg_.nodal_indices, cfg_.jobs, [&](int n) { return eigenvalue(n); });
        std::vector<NodalSet> sets;
        for (const auto& r : recs) {
            if (!r.converged || !r.is_real() || !(r.mu() > 0.0)) {
                log("ERROR", "non_convergence", "no real positive eigenvalue for index " + r.index.str());
                throw Exit{kExitNumeric};
            }
        }
        return parallel_map(recs, cfg_.jobs, [&](const EigenvalueRecord& r) { return find_nodes(cfg_.problem, r, cfg_.solver); });
    }

    LimitFunctionEstimate estimate() {
        const auto sets = nodal_sets();
        return estimate_limit_function(sets, uniform_grid(cfg_.grid_points), branch_or_fail(), cfg_.richardson);
    }

    void emit_table(const std::string& stem, const Table& t) {
        if (opt_.format == "json") {
            emit_json(stem + ".json", t.to_json());
        } else {
            const auto path = std::filesystem::path(cfg_.output) / (stem + ".csv");
            write_text(path, t.to_csv());
            log("INFO", "wrote", path.string());
        }
    }

    void emit_json(const std::string& name, const json& doc) {
        const auto path = std::filesystem::path(cfg_.output) / name;
        write_text(path, doc.dump(2) + "\n");
        log("INFO", "wrote", path.string());
    }

    RunConfig cfg_;
    Options opt_;
};

json check_entry(const std::string& id, const std::string& what, double expected, double computed, double tol,
                 std::optional<double> reference = {}) {
    json c;
    c["id"] = id;
    c["description"] = what;
    c["expected"] = json_number(expected);
    c["computed"] = json_number(computed);
    c["tolerance"] = tol;
    c["abs_error"] = json_number(std::abs(computed - expected));
    c["pass"] = std::abs(computed - expected) <= tol;
    if (reference) {
        c["reference_value"] = json_number(*reference);
        c["reproduces_reference"] = false;
    } else {
        c["reproduces_reference"] = c["pass"];
    }
    return c;
}

} // namespace

json verify_examples(const SolverControl& control, int jobs) {
    const auto e1 = catalog::example1();
    const auto e2 = catalog::example2();
    const auto e1_39 = oscillatory_integrals(e1, 39.0);
    const auto e2_39 = oscillatory_integrals(e2, 39.0);
    const auto e1_0 = oscillatory_integrals(e1, 0.0);

    // Closed forms: 1/2 int_0^pi t cos(39 t / 2) dt and 1/2 int_0^pi t dt.
    const double a = 19.5;
    const double e1_u39 = 0.5 * (kPi * std::sin(a * kPi) / a + (std::cos(a * kPi) - 1.0) / (a * a));
    const double e1_u0 = kPi * kPi / 4.0;
    const double ep = std::exp(kPi) - 1.0;
    const double e1_trace = -kPi - std::pow(kPi, 4) / 4.0 + 8.1 * 8.1;
    const double c2 = 10.0 / 7.0 + ep;
    const double e2_trace = -(2.0 / kPi) * c2 - c2 * c2 + std::pow(4.0 / 7.0 + 0.3, 2);

    const std::vector<int> which{1, 2};
    const auto mu40 = parallel_map(which, jobs, [&](int k) {
        return find_eigenvalue(k == 1 ? e1 : e2, SpectralIndex::pos(40), control);
    });

    json checks = json::array();
    checks.push_back(check_entry("ex2_u_plus_39", "U+(39) for q = exp(t), Delta = 0", 11.0703463164, e2_39.u_plus, 1e-8));
    {
        auto c = check_entry("ex2_v_plus_39", "V+(39) for q = exp(t), Delta = 0", 0.00181958345, e2_39.v_plus, 1e-9);
        // int_0^pi e^t cos(78 t) dt / 2 = (e^pi - 1) / (2 (1 + 78^2))
        c["closed_form"] = json_number(ep / (2.0 * (1.0 + 78.0 * 78.0)));
        checks.push_back(c);
    }
    checks.push_back(check_entry("ex1_v_plus_39", "V+(39) for q = t, Delta = t/2", 0.02670511654, e1_39.v_plus, 1e-9));
    checks.push_back(check_entry("ex1_u_plus_39", "U+(39) for q = t, Delta = t/2 (closed form)", e1_u39,
                                 e1_39.u_plus, 1e-8, 0.00065746219));
    checks.push_back(check_entry("ex1_u_plus_0", "U+(0) = pi^2/4 for q = t", e1_u0, e1_0.u_plus, 1e-8, 4.93480220054));
    checks.push_back(check_entry("ex1_v_plus_0", "V+(0) = pi^2/4 for q = t", e1_u0, e1_0.v_plus, 1e-8, 4.93480220054));
    checks.push_back(check_entry("ex1_trace_rhs", "trace right side, closed form", e1_trace, trace_rhs(e1), 1e-3,
                                 58.3910062461));
    checks.push_back(check_entry("ex2_trace_rhs", "trace right side, closed form", e2_trace, trace_rhs(e2), 1e-3,
                                 -569.751286593));
    for (int k = 0; k < 2; ++k) {
        const auto& r = mu40[static_cast<std::size_t>(k)];
        const std::string id = k == 0 ? "ex1_mu40" : "ex2_mu40";
        auto c = check_entry(id, "root for n = +40 against the large-index estimate", r.estimate, r.mu(), 1e-2,
                             k == 0 ? 38.9997766723 : 37.9930198832);
        c["converged"] = r.converged;
        c["pass"] = c["pass"].template get<bool>() && r.converged;
        checks.push_back(c);
    }

    json doc;
    bool all = true;
    for (const auto& c : checks) all = all && c["pass"].get<bool>();
    doc["checks"] = checks;
    doc["pass"] = all;
    return doc;
}

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"Spectral toolkit for delay Sturm-Liouville problems with transmission conditions", "rsl"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", opt.config, "JSON run configuration");
        if (needs_config) c->required();
        sub->add_option("--out", opt.out, "output directory");
        sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--format", opt.format, "table format")->check(CLI::IsMember({"csv", "json"}));
    };
    auto add_sweep = [&](CLI::App* sub) {
        sub->add_option("--n-min", opt.n_min, "smallest index magnitude");
        sub->add_option("--n-max", opt.n_max, "largest index magnitude");
    };

    auto* validate_cmd = app.add_subcommand("validate", "check a problem definition");
    auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalue sweep");
    auto* trace_cmd = app.add_subcommand("trace", "regularized trace partial sums");
    auto* nodal_cmd = app.add_subcommand("nodal", "eigenfunction zeros, numeric and asymptotic");
    auto* limit_cmd = app.add_subcommand("limitfn", "limit function estimate from nodal data");
    auto* recon_cmd = app.add_subcommand("reconstruct", "potential reconstruction from nodal data");
    auto* verify_cmd = app.add_subcommand("verify-examples", "check the built-in example values");
    for (auto* s : {validate_cmd, spectrum_cmd, trace_cmd, nodal_cmd, limit_cmd, recon_cmd}) add_common(s, true);
    add_common(verify_cmd, false);
    add_sweep(spectrum_cmd);
    add_sweep(trace_cmd);
    recon_cmd->add_option("--u-plus-zero", opt.u_plus_zero, "half the integral of q over [0, pi]");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        log("ERROR", "usage", e.what());
        return kExitConfig;
    }

    try {
        if (verify_cmd->parsed()) {
            SolverControl control;
            int jobs = opt.jobs > 0 ? opt.jobs : 1;
            std::string out = opt.out.empty() ? "rsl_out" : opt.out;
            if (!opt.config.empty()) {
                const auto cfg = load_config(opt.config);
                control = cfg.solver;
                if (opt.jobs <= 0) jobs = cfg.jobs;
                if (opt.out.empty()) out = cfg.output;
            }
            const auto doc = verify_examples(control, jobs);
            for (const auto& c : doc["checks"]) {
                if (!c["pass"].get<bool>()) {
                    log("ERROR", "check_failed",
                        c["id"].get<std::string>() + " expected " + c["expected"].dump() + " computed " +
                            c["computed"].dump());
                } else if (!c["reproduces_reference"].get<bool>()) {
                    log("INFO", "reference_not_reproduced",
                        c["id"].get<std::string>() + " reference " + c["reference_value"].dump() + " substituted " +
                            c["computed"].dump());
                }
            }
            const auto path = std::filesystem::path(out) / "verify.json";
            write_text(path, doc.dump(2) + "\n");
            std::cout << doc.dump(2) << '\n';
            return doc["pass"].get<bool>() ? kExitOk : kExitNumeric;
        }

        Runner runner(load_config(opt.config), opt);
        if (validate_cmd->parsed()) return runner.validate_only();
        if (spectrum_cmd->parsed()) return runner.spectrum();
        if (trace_cmd->parsed()) return runner.trace();
        if (nodal_cmd->parsed()) return runner.nodal();
        if (limit_cmd->parsed()) return runner.limitfn();
        if (recon_cmd->parsed()) return runner.reconstruct();
    } catch (const Exit& e) {
        return e.code;
    } catch (const ConfigError& e) {
        log("ERROR", "config", e.what());
        return kExitConfig;
    } catch (const DomainError& e) {
        log("ERROR", "domain", e.what());
        return kExitValidation;
    } catch (const ConvergenceError& e) {
        log("ERROR", "non_convergence", e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        log("ERROR", "io", e.what());
        return kExitConfig;
    }
    return kExitConfig;
}

} // namespace rsl::cli
