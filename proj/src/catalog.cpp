#include "rsl/catalog.hpp"

namespace rsl::catalog {

ProblemSpec example1() {
    ProblemSpec s;
    s.theta = {1.0};
    s.delta = {1.0};
    s.alpha = {.c1_minus = 1.0, .c1_plus = 0.0, .c2_minus = -8.0, .c2_plus = -1.0};
    s.beta = {.c1_minus = 1.0, .c1_plus = 0.0, .c2_minus = -0.1, .c2_plus = -1.0};
    s.q = ScalarFunction::parse("t");
    s.delay = ScalarFunction::parse("t/2");
    return s;
}

ProblemSpec example2() {
    ProblemSpec s;
    s.theta = {1.5, 2.0};
    s.delta = {2.0, 8.0};
    s.alpha = {.c1_minus = 2.0, .c1_plus = 3.0, .c2_minus = 4.0, .c2_plus = 7.0};
    s.beta = {.c1_minus = -5.0, .c1_plus = 1.0, .c2_minus = 0.3, .c2_plus = 1.0};
    s.q = ScalarFunction::parse("exp(t)");
    s.delay = ScalarFunction::parse("0");
    return s;
}

} // namespace rsl::catalog
