#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "rsl/nodal.hpp"

namespace rsl {

enum class LimitBranch { DelayZero, DelayNonzero };
std::string_view branch_name(LimitBranch b) noexcept;

/// Branch of the limit function for a problem: DelayZero when Delta is identically
/// zero, DelayNonzero when Delta > 0 on the interior validation grid. Throws
/// std::invalid_argument for delays that vanish on part of (0, pi).
LimitBranch limit_branch(const ProblemSpec& spec);

struct LimitFunctionEstimate {
    std::vector<double> grid;
    std::vector<double> f_hat;
    std::vector<double> node_t;  // abscissa of the node each sample came from
    std::vector<char> gap;       // grid point lies past the last node
    int source_n = 0;
    int secondary_n = 0;         // 0 unless Richardson extrapolation was applied
    LimitBranch branch = LimitBranch::DelayZero;
};

/// f_hat(t) = (mu0)^2 [t_n^j - (j - 1/2) pi / mu0] with j = j_n(t) + 1 from the
/// set with the largest index. With `richardson`, the two largest sets are
/// combined as (mu0_2 f_2 - mu0_1 f_1) / (mu0_2 - mu0_1).
LimitFunctionEstimate estimate_limit_function(const std::vector<NodalSet>& sets, const std::vector<double>& grid,
                                              LimitBranch branch, bool richardson = false);

/// Closed-form limit function on the problem's delay branch.
double limit_function_exact(const ProblemSpec& spec, double t);

/// Samples f on `grid` directly (node_t = grid), for feeding exact f into reconstruction.
LimitFunctionEstimate sample_limit_function(const std::function<double(double)>& f, const std::vector<double>& grid,
                                            LimitBranch branch);

struct ReconstructionResult {
    std::vector<double> grid;
    std::vector<double> q_hat;
    std::vector<double> f_prime;
    double u_plus_zero = 0.0;
    double f_zero = 0.0;
    double f_pi = 0.0;
    int stencil = 5;
};

/// q(t) = (2/pi)[U+(0) + f(pi) - f(0)] - 2 f'(t). f' from a moving least-squares
/// quadratic over the `stencil` nearest samples; f(0), f(pi) by quadratic
/// extrapolation through the three samples nearest each end.
ReconstructionResult reconstruct_potential(const LimitFunctionEstimate& f, double u_plus_zero, int stencil = 5);

/// n + 1 equally spaced points on [0, pi].
std::vector<double> uniform_grid(int n);

} // namespace rsl
