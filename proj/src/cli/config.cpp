#include "cli/config.hpp"

#include <fstream>
#include <set>

namespace rsl::cli {

namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(where, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items()) {
        if (!ok.count(key)) throw ConfigError(where + "/" + key, "unknown key");
    }
}

double number(const json& obj, const std::string& where, const char* key, std::optional<double> fallback = {}) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(where + "/" + key, "missing required number");
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "/" + key, "expected a number");
    return v.get<double>();
}

int integer(const json& obj, const std::string& where, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "/" + key, "expected an integer");
    return v.get<int>();
}

std::vector<double> numbers(const json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key)) return {};
    const auto& v = obj.at(key);
    if (!v.is_array()) throw ConfigError(where + "/" + key, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) throw ConfigError(where + "/" + key + "/" + std::to_string(i), "expected a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

ScalarFunction function(const json& obj, const std::string& where, const char* key,
                        const std::filesystem::path& base_dir) {
    const std::string at = where + "/" + key;
    if (!obj.contains(key)) throw ConfigError(at, "missing function (expression string or {\"table\": path})");
    const auto& v = obj.at(key);
    if (v.is_string()) {
        try {
            return ScalarFunction::parse(v.get<std::string>());
        } catch (const ParseError& e) {
            throw ConfigError(at, e.what());
        }
    }
    if (v.is_number()) return ScalarFunction(Expr::constant(v.get<double>()));
    if (v.is_object()) {
        only_keys(v, at, {"table"});
        if (!v.contains("table") || !v.at("table").is_string()) throw ConfigError(at + "/table", "expected a path");
        std::filesystem::path p = v.at("table").get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        try {
            return ScalarFunction(SampledTable::load_csv(p));
        } catch (const std::exception& e) {
            throw ConfigError(at + "/table", e.what());
        }
    }
    throw ConfigError(at, "expected an expression string or {\"table\": path}");
}

} // namespace

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
    only_keys(doc, "", {"problem", "solver", "sweep", "nodal", "inverse", "output", "jobs"});
    RunConfig cfg;

    if (!doc.contains("problem")) throw ConfigError("/problem", "missing problem section");
    const auto& p = doc.at("problem");
    only_keys(p, "/problem", {"theta", "delta", "alpha", "beta", "q", "delay"});
    cfg.problem.theta = numbers(p, "/problem", "theta");
    cfg.problem.delta = numbers(p, "/problem", "delta");
    if (cfg.problem.theta.size() != cfg.problem.delta.size()) {
        throw ConfigError("/problem/delta", "length must match theta");
    }
    if (!p.contains("alpha")) throw ConfigError("/problem/alpha", "missing boundary coefficients");
    if (!p.contains("beta")) throw ConfigError("/problem/beta", "missing boundary coefficients");
    const auto& a = p.at("alpha");
    only_keys(a, "/problem/alpha", {"a1m", "a1p", "a2m", "a2p"});
    cfg.problem.alpha = {number(a, "/problem/alpha", "a1m"), number(a, "/problem/alpha", "a1p"),
                         number(a, "/problem/alpha", "a2m"), number(a, "/problem/alpha", "a2p")};
    const auto& b = p.at("beta");
    only_keys(b, "/problem/beta", {"b1m", "b1p", "b2m", "b2p"});
    cfg.problem.beta = {number(b, "/problem/beta", "b1m"), number(b, "/problem/beta", "b1p"),
                        number(b, "/problem/beta", "b2m"), number(b, "/problem/beta", "b2p")};
    cfg.problem.q = function(p, "/problem", "q", base_dir);
    cfg.problem.delay = function(p, "/problem", "delay", base_dir);

    if (doc.contains("solver")) {
        const auto& s = doc.at("solver");
        only_keys(s, "/solver", {"h_max", "c_osc", "tol_step", "max_step_iterations"});
        const SolverControl d;
        cfg.solver.h_max = number(s, "/solver", "h_max", d.h_max);
        cfg.solver.c_osc = number(s, "/solver", "c_osc", d.c_osc);
        cfg.solver.tol_step = number(s, "/solver", "tol_step", d.tol_step);
        cfg.solver.max_step_iterations = integer(s, "/solver", "max_step_iterations", d.max_step_iterations);
        try {
            cfg.solver.check();
        } catch (const std::invalid_argument& e) {
            throw ConfigError("/solver", e.what());
        }
    }
    if (doc.contains("sweep")) {
        const auto& s = doc.at("sweep");
        only_keys(s, "/sweep", {"n_min", "n_max"});
        cfg.n_min = integer(s, "/sweep", "n_min", cfg.n_min);
        cfg.n_max = integer(s, "/sweep", "n_max", cfg.n_max);
    }
    if (cfg.n_min < 0 || cfg.n_max < cfg.n_min) throw ConfigError("/sweep", "need 0 <= n_min <= n_max");
    if (doc.contains("nodal")) {
        const auto& s = doc.at("nodal");
        only_keys(s, "/nodal", {"indices"});
        if (s.contains("indices")) {
            const auto& v = s.at("indices");
            if (!v.is_array() || v.empty()) throw ConfigError("/nodal/indices", "expected a nonempty array");
            cfg.nodal_indices.clear();
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!v[i].is_number_integer() || v[i].get<int>() < 1) {
                    throw ConfigError("/nodal/indices/" + std::to_string(i), "expected a positive integer");
                }
                cfg.nodal_indices.push_back(v[i].get<int>());
            }
        }
    }
    if (doc.contains("inverse")) {
        const auto& s = doc.at("inverse");
        only_keys(s, "/inverse", {"grid_points", "u_plus_zero", "richardson"});
        cfg.grid_points = integer(s, "/inverse", "grid_points", cfg.grid_points);
        if (cfg.grid_points < 4) throw ConfigError("/inverse/grid_points", "need at least 4");
        if (s.contains("u_plus_zero")) cfg.u_plus_zero = number(s, "/inverse", "u_plus_zero");
        if (s.contains("richardson")) {
            if (!s.at("richardson").is_boolean()) throw ConfigError("/inverse/richardson", "expected a boolean");
            cfg.richardson = s.at("richardson").get<bool>();
        }
    }
    if (doc.contains("output")) {
        if (!doc.at("output").is_string()) throw ConfigError("/output", "expected a directory path");
        cfg.output = doc.at("output").get<std::string>();
    }
    cfg.jobs = integer(doc, "", "jobs", cfg.jobs);
    if (cfg.jobs < 1) throw ConfigError("/jobs", "must be at least 1");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config '" + path.string() + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", path.string() + ": " + e.what());
    }
    return parse_config(doc, path.parent_path());
}

} // namespace rsl::cli
