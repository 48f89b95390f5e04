#pragma once

#include "rsl/problem.hpp"

namespace rsl::catalog {

/// q = t, Delta = t/2, one interior point at 1 with unit jump.
ProblemSpec example1();

/// q = exp(t), Delta = 0, interior points 1.5 and 2 with jumps 2 and 8.
ProblemSpec example2();

} // namespace rsl::catalog
