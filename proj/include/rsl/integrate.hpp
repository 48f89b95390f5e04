#pragma once

// Shooting solution phi(t, mu) of the delay equation on [0, pi] with the
// transmission jumps applied at each theta_i, plus an independent
// successive-approximation solver used as a cross-check.

#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "rsl/problem.hpp"

namespace rsl {

using cplx = std::complex<double>;

struct SolverControl {
    double h_max = std::numbers::pi / 2000.0;
    double c_osc = 8.0;
    double tol_step = 1e-12;
    int max_step_iterations = 5;

    /// Throws std::invalid_argument when a field is out of range.
    void check() const;

    /// Nominal step for frequency mu before truncation to the segment grid.
    double step(double abs_mu) const;
};

template <class S>
struct SolutionSegment {
    std::vector<double> t;
    std::vector<S> y;
    std::vector<S> yp;
    std::vector<S> ypp;
};

template <class S>
struct State {
    S y{};
    S yp{};
};

template <class S>
class PiecewiseSolution {
public:
    PiecewiseSolution() = default;
    PiecewiseSolution(std::vector<double> theta, std::vector<double> delta,
                      std::vector<SolutionSegment<S>> segments);

    static constexpr bool is_complex = !std::is_same_v<S, double>;

    const std::vector<SolutionSegment<S>>& segments() const noexcept { return segments_; }
    const std::vector<double>& theta() const noexcept { return theta_; }
    const std::vector<double>& delta() const noexcept { return delta_; }

    /// Dense output at t in [0, pi]. At theta_i the post-jump state is returned.
    State<S> operator()(double t) const;
    /// y only; cheaper than operator() when y' is not needed.
    S value(double t) const;

    /// State at theta_i approached from the left (end of segment i-1), i = 1..m.
    State<S> left_limit(int i) const;
    State<S> at_pi() const;

    std::size_t node_count() const noexcept;

private:
    std::pair<int, std::size_t> locate(double t) const;

    std::vector<double> theta_;
    std::vector<double> delta_;
    std::vector<SolutionSegment<S>> segments_;
};

template <class S>
PiecewiseSolution<S> shoot(const ProblemSpec& spec, S mu, const SolverControl& control = {});

/// Only phi(pi), phi'(pi); skips dense storage when the equation has no delay.
template <class S>
State<S> shoot_endpoint(const ProblemSpec& spec, S mu, const SolverControl& control = {});

template <class S>
PiecewiseSolution<S> picard_solve(const ProblemSpec& spec, S mu, int iterations, int nodes_per_segment);

template <class S>
State<S> eval_solution(const PiecewiseSolution<S>& sol, double t) {
    return sol(t);
}

/// Initial state (phi(0), phi'(0)) = (mu a2+ + a2-, mu a1+ + a1-).
template <class S>
State<S> initial_state(const ProblemSpec& spec, S mu) {
    return {mu * spec.alpha.c2_plus + spec.alpha.c2_minus, mu * spec.alpha.c1_plus + spec.alpha.c1_minus};
}

} // namespace rsl
