#pragma once

#include <compare>
#include <string>

namespace rsl {

/// Signed eigenvalue index. +0 and -0 are distinct.
struct SpectralIndex {
    int sign = +1;  // +1 or -1
    int magnitude = 0;

    static SpectralIndex pos(int k) { return {+1, k}; }
    static SpectralIndex neg(int k) { return {-1, k}; }
    /// Nonzero integer n; use pos(0) / neg(0) for the two zero indices.
    static SpectralIndex from_int(int n) { return n < 0 ? neg(-n) : pos(n); }

    int value() const noexcept { return sign * magnitude; }

    /// Ordering along the index line: ... -2, -1, -0, +0, +1, +2 ...
    int rank() const noexcept { return sign > 0 ? 2 * magnitude + 1 : -2 * magnitude; }

    friend bool operator==(const SpectralIndex&, const SpectralIndex&) = default;
    friend auto operator<=>(const SpectralIndex& a, const SpectralIndex& b) { return a.rank() <=> b.rank(); }

    std::string str() const { return (sign > 0 ? "+" : "-") + std::to_string(magnitude); }
};

/// Zeros of the unperturbed characteristic function: 0 for |n| <= 1, n - 1 for n >= 1, n + 1 for n <= -1.
inline double mu_seed(SpectralIndex n) {
    if (n.magnitude <= 1) return 0.0;
    return n.sign * (n.magnitude - 1.0);
}

} // namespace rsl
