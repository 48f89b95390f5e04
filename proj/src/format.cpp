#include "rsl/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace rsl {

std::string fmt12(double x) {
    if (x == 0.0) return "0";
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 12);
    return std::string(buf.data(), res.ptr);
}

} // namespace rsl
