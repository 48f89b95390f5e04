#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsl/integrate.hpp"
#include "rsl/problem.hpp"

namespace rsl::cli {

/// Malformed configuration; `where` is a JSON pointer into the document.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string where, const std::string& message)
        : std::runtime_error(where.empty() ? message : where + ": " + message), where_(std::move(where)) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

struct RunConfig {
    ProblemSpec problem;
    SolverControl solver;
    int n_min = 0;
    int n_max = 40;
    std::vector<int> nodal_indices{40};
    int grid_points = 200;
    std::optional<double> u_plus_zero;
    bool richardson = false;
    std::string output = "rsl_out";
    int jobs = 1;
};

/// Table paths in `q` / `delay` resolve against `base_dir`.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

} // namespace rsl::cli
