#pragma once

#include <string>
#include <vector>

#include "rsl/spectrum.hpp"

namespace rsl {

struct TraceTerm {
    int n = 0;                // magnitude; the term pairs +n with -n
    int sign = +1;
    double mu_sq = 0.0;       // Re(mu_n^2)
    double mu0_sq = 0.0;
    double u_plus = 0.0;      // U+(mu_n^0)
    double v_plus = 0.0;      // V+(mu_n^0)
    double correction = 0.0;  // (4/pi)(B + U+ + V+)
    double term = 0.0;        // mu_sq - mu0_sq + correction
};

struct TraceReport {
    int n_max = 0;
    std::vector<double> partial_sums;  // partial_sums[N] = S_N, N = 0..n_max
    double rhs = 0.0;
    double zero_contribution = 0.0;    // mu_{-0}^2 + mu_{+0}^2
    std::vector<TraceTerm> terms;      // ordered by n, then sign (- before +)
    std::vector<std::string> diagnostics;
};

/// -(2/pi)(B + U+(0) + V+(0)) - (B + U+(0) + V+(0))^2 + (alpha2-/alpha2+ + beta2-/beta2+)^2
double trace_rhs(const ProblemSpec& spec);

/// Symmetric partial sums S_N, N = 0..n_max, with S_0 the +-0 contribution alone.
/// Throws std::invalid_argument if an index in {+-0} or 0 < |n| <= n_max is missing or not converged.
TraceReport trace_partial_sums(const ProblemSpec& spec, const std::vector<EigenvalueRecord>& records, int n_max);

} // namespace rsl
