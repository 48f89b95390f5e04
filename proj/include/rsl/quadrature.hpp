#pragma once

#include <array>
#include <span>
#include <vector>

namespace rsl {

/// Ten-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre10 {
    std::array<double, 10> x;
    std::array<double, 10> w;
};
const GaussLegendre10& gauss_legendre10();

/// Flattened composite rule: nodes and weights on [a, b].
struct QuadratureRule {
    std::vector<double> x;
    std::vector<double> w;
    int panels = 0;
};

/// Composite 10-point rule with `panels` panels on [a, b]. Interior `breaks`
/// inside (a, b) become panel edges; panels are shared out in proportion to
/// sub-interval length, at least one each.
QuadratureRule composite_gauss(double a, double b, int panels, std::span<const double> breaks = {});

/// Panel count used for oscillatory integrals at frequency mu over [0, pi].
int oscillatory_panels(double mu);

} // namespace rsl
