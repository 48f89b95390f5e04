#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace rsl::cli {

/// Cell of an output table. Doubles render with 12 significant digits;
/// std::monostate renders as an empty CSV field or JSON null.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    std::string to_csv() const;
    nlohmann::json to_json() const;
};

/// 12-significant-digit number for JSON output.
nlohmann::json json_number(double x);

/// Throws std::runtime_error on IO failure.
void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace rsl::cli
