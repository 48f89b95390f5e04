#pragma once

// Boundary-value problem with retarded argument and interior transmission points:
//
//   y''(t) + q(t) y(t - Delta(t)) + mu^2 y(t) = 0,   t in [0, pi] \ {theta_i}
//   y(theta_i-) = delta_i y(theta_i+),  y'(theta_i-) = delta_i y'(theta_i+)
//
// with boundary forms linear in mu at both ends.

#include <optional>
#include <string>
#include <vector>

#include "rsl/expr.hpp"

namespace rsl {

/// Coefficients of a boundary form (mu*c1p + c1m) y' ... (mu*c2p + c2m) y.
struct BoundaryCoefficients {
    double c1_minus = 0.0;
    double c1_plus = 0.0;
    double c2_minus = 0.0;
    double c2_plus = 0.0;
};

struct ProblemSpec {
    std::vector<double> theta;  // interior points, strictly inside (0, pi)
    std::vector<double> delta;  // jump factors, one per theta
    BoundaryCoefficients alpha;
    BoundaryCoefficients beta;
    ScalarFunction q;
    ScalarFunction delay;

    int m() const noexcept { return static_cast<int>(theta.size()); }

    /// Product of all delta_i (1 when m = 0).
    double delta_product() const noexcept;

    /// beta1+/beta2+ + alpha1+/alpha2+
    double b_const() const noexcept;

    bool delay_is_zero() const noexcept { return delay.is_identically_zero(); }
};

struct Finding {
    std::string rule;
    std::optional<double> t;
    std::string message;
};

struct ValidationReport {
    bool pass = true;
    std::vector<Finding> violations;
    std::vector<Finding> warnings;
};

inline constexpr int kValidationGrid = 4097;

ValidationReport validate(const ProblemSpec& spec);

/// Index i with t in [theta_i, theta_{i+1}); m for t = pi. Throws std::out_of_range outside [0, pi].
int segment_of(const ProblemSpec& spec, double t);

/// Left end of segment i (0 for i = 0).
double segment_start(const ProblemSpec& spec, int i);
/// Right end of segment i (pi for i = m).
double segment_end(const ProblemSpec& spec, int i);

} // namespace rsl
