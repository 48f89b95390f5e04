#pragma once
// Small closed-form problems shared by the unit tests and the acceptance run.

#include <numbers>

#include "rsl/catalog.hpp"
#include "rsl/problem.hpp"

namespace rsl::testing {

// y'' + mu^2 y = 0, one trivial interior point, Dirichlet-type forms scaled by mu:
// phi = mu cos(mu t), xi = mu^3 sin(mu pi).
inline ProblemSpec t0() {
    ProblemSpec s;
    s.theta = {std::numbers::pi / 2};
    s.delta = {1.0};
    s.alpha = {.c1_minus = 0.0, .c1_plus = 0.0, .c2_minus = 0.0, .c2_plus = 1.0};
    s.beta = {.c1_minus = 0.0, .c1_plus = 0.0, .c2_minus = 0.0, .c2_plus = 1.0};
    s.q = ScalarFunction::parse("0");
    s.delay = ScalarFunction::parse("0");
    return s;
}

// q = 1: phi = mu cos(w t), w = sqrt(mu^2 + 1); xi = mu^2 w sin(w pi).
inline ProblemSpec t1() {
    auto s = t0();
    s.q = ScalarFunction::parse("1");
    return s;
}

// alpha1+ = 1: phi = mu cos(mu t) + sin(mu t); xi = mu^2 (mu sin(mu pi) - cos(mu pi)).
// Nonzero real roots solve mu tan(mu pi) = 1.
inline ProblemSpec t2() {
    auto s = t0();
    s.alpha.c1_plus = 1.0;
    return s;
}

// Example 1 with the delay removed.
inline ProblemSpec example1_flat() {
    auto s = catalog::example1();
    s.delay = ScalarFunction::parse("0");
    return s;
}

} // namespace rsl::testing
