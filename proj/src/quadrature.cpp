#include "rsl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rsl {

namespace {

GaussLegendre10 build_rule() {
    constexpr int n = 10;
    GaussLegendre10 r{};
    for (int i = 0; i < n; ++i) {
        // Newton on P_n from the Chebyshev-like initial guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.x[static_cast<std::size_t>(i)] = x;
        r.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

} // namespace

const GaussLegendre10& gauss_legendre10() {
    static const GaussLegendre10 rule = build_rule();
    return rule;
}

QuadratureRule composite_gauss(double a, double b, int panels, std::span<const double> breaks) {
    QuadratureRule rule;
    if (!(b > a)) return rule;
    std::vector<double> edges{a};
    for (double br : breaks) {
        if (br > a && br < b) edges.push_back(br);
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    const auto& gl = gauss_legendre10();
    const double len = b - a;
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
        const double lo = edges[s], hi = edges[s + 1];
        const int np = std::max(1, static_cast<int>(std::ceil(panels * (hi - lo) / len - 1e-9)));
        const double ph = (hi - lo) / np;
        for (int p = 0; p < np; ++p) {
            const double c = lo + (p + 0.5) * ph;
            for (std::size_t k = 0; k < gl.x.size(); ++k) {
                rule.x.push_back(c + 0.5 * ph * gl.x[k]);
                rule.w.push_back(0.5 * ph * gl.w[k]);
            }
        }
        rule.panels += np;
    }
    return rule;
}

int oscillatory_panels(double mu) {
    return std::max(64, static_cast<int>(std::ceil(8.0 * (1.0 + std::abs(mu)))));
}

} // namespace rsl
