#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rsl/integrate.hpp"

namespace rsl::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitValidation = 2,
    kExitNumeric = 3,
};

/// argv excludes the program name: {"spectrum", "--config", "t0.json", ...}.
int run_command(const std::vector<std::string>& args);

/// Built-in example checks; each entry carries id, expected, computed,
/// tolerance, pass and, where a published figure does not reproduce, that
/// figure as reference_value.
nlohmann::json verify_examples(const SolverControl& control = {}, int jobs = 1);

} // namespace rsl::cli
