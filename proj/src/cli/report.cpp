#include "cli/report.hpp"

#include <cmath>
#include <fstream>

#include "rsl/format.hpp"

namespace rsl::cli {

namespace {

std::string render(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, double>) {
                return fmt12(v);
            } else if constexpr (std::is_same_v<T, long long>) {
                return std::to_string(v);
            } else {
                return v;
            }
        },
        c);
}

} // namespace

nlohmann::json json_number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return std::stod(fmt12(x));
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += render(row[i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json Table::to_json() const {
    auto arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size() && i < header.size(); ++i) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::monostate>) {
                        obj[header[i]] = nullptr;
                    } else if constexpr (std::is_same_v<T, double>) {
                        obj[header[i]] = json_number(v);
                    } else {
                        obj[header[i]] = v;
                    }
                },
                row[i]);
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw std::runtime_error("cannot create directory '" + path.parent_path().string() + "'");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

} // namespace rsl::cli
