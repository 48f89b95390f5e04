#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rsl/error.hpp"
#include "rsl/expr.hpp"
#include "rsl/format.hpp"

namespace rsl {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_field(std::string_view field, std::string_view source, std::size_t line) {
    field = trim(field);
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size() || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(source) + ":" + std::to_string(line) +
                                    ": bad number '" + std::string(field) + "'");
    }
    return v;
}

// Fritsch-Carlson slopes: harmonic-mean interior slopes, zero at local extrema.
std::vector<double> pchip_slopes(const std::vector<double>& t, const std::vector<double>& v) {
    const std::size_t n = t.size();
    std::vector<double> d(n, 0.0);
    if (n == 2) {
        d[0] = d[1] = (v[1] - v[0]) / (t[1] - t[0]);
        return d;
    }
    std::vector<double> h(n - 1), del(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        h[k] = t[k + 1] - t[k];
        del[k] = (v[k + 1] - v[k]) / h[k];
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (del[k - 1] * del[k] <= 0.0) continue;
        const double w1 = 2 * h[k] + h[k - 1];
        const double w2 = h[k] + 2 * h[k - 1];
        d[k] = (w1 + w2) / (w1 / del[k - 1] + w2 / del[k]);
    }
    auto end_slope = [](double h0, double h1, double del0, double del1) {
        double s = ((2 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
        if (s * del0 <= 0.0) {
            s = 0.0;
        } else if (del0 * del1 <= 0.0 && std::abs(s) > std::abs(3 * del0)) {
            s = 3 * del0;
        }
        return s;
    };
    d[0] = end_slope(h[0], h[1], del[0], del[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
    return d;
}

} // namespace

SampledTable::SampledTable(std::vector<double> t, std::vector<double> values)
    : t_(std::move(t)), v_(std::move(values)) {
    if (t_.size() != v_.size()) throw std::invalid_argument("table: t and value lengths differ");
    if (t_.size() < 2) throw std::invalid_argument("table: need at least two samples");
    for (std::size_t k = 0; k < t_.size(); ++k) {
        if (!std::isfinite(t_[k]) || !std::isfinite(v_[k])) {
            throw std::invalid_argument("table: non-finite sample");
        }
        if (k > 0 && !(t_[k] > t_[k - 1])) {
            throw std::invalid_argument("table: abscissae must be strictly ascending");
        }
    }
    slope_ = pchip_slopes(t_, v_);
}

SampledTable SampledTable::parse_csv(std::string_view text, std::string_view source) {
    std::vector<double> t, v;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = trim(text.substr(0, eol));
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            header_seen = true;
            if (line == "t,value") continue;
            throw std::invalid_argument(std::string(source) + ":" + std::to_string(line_no) +
                                        ": expected header 't,value'");
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
            throw std::invalid_argument(std::string(source) + ":" + std::to_string(line_no) +
                                        ": expected two columns");
        }
        t.push_back(parse_field(line.substr(0, comma), source, line_no));
        v.push_back(parse_field(line.substr(comma + 1), source, line_no));
    }
    return SampledTable(std::move(t), std::move(v));
}

SampledTable SampledTable::load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open table '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str(), path.string());
}

double SampledTable::operator()(double t) const {
    if (!(t >= t_.front() && t <= t_.back())) {
        throw DomainError(t, "table", "table argument outside sampled range");
    }
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t k = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
    if (k + 1 >= t_.size()) k = t_.size() - 2;
    const double h = t_[k + 1] - t_[k];
    const double s = (t - t_[k]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    return h00 * v_[k] + h10 * h * slope_[k] + h01 * v_[k + 1] + h11 * h * slope_[k + 1];
}

bool SampledTable::is_identically_zero() const noexcept {
    return std::all_of(v_.begin(), v_.end(), [](double x) { return x == 0.0; });
}

std::string SampledTable::to_csv() const {
    std::string out = "t,value\n";
    for (std::size_t k = 0; k < t_.size(); ++k) {
        out += fmt12(t_[k]);
        out += ',';
        out += fmt12(v_[k]);
        out += '\n';
    }
    return out;
}

} // namespace rsl
