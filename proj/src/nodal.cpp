#include "rsl/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rsl/asymptotics.hpp"

namespace rsl {

namespace {
constexpr double kPi = std::numbers::pi;
}

NodalSet find_nodes(const ProblemSpec& spec, const EigenvalueRecord& rec, const SolverControl& control) {
    if (!rec.is_real() || !(rec.mu() > 0.0)) {
        throw std::invalid_argument("find_nodes: needs a real positive eigenvalue");
    }
    NodalSet ns;
    ns.index = rec.index;
    ns.mu = rec.mu();
    ns.mu0 = mu_seed(rec.index);
    const auto sol = shoot<double>(spec, ns.mu, control);
    const double step = kPi / (20.0 * (1.0 + ns.mu));

    for (int seg = 0; seg <= spec.m(); ++seg) {
        const double a = segment_start(spec, seg);
        const double b = segment_end(spec, seg);
        const auto& data = sol.segments()[static_cast<std::size_t>(seg)];
        // Right end is the left limit at theta, not the post-jump value.
        auto value = [&](double t) { return t >= b ? data.y.back() : sol.value(t); };

        const int n = std::max(1, static_cast<int>(std::ceil((b - a) / step)));
        double t_prev = a, y_prev = value(a);
        ns.amplitude = std::max(ns.amplitude, std::abs(y_prev));
        for (int k = 1; k <= n; ++k) {
            const double t = k == n ? b : a + (b - a) * k / n;
            const double y = value(t);
            ns.amplitude = std::max(ns.amplitude, std::abs(y));
            if (y_prev == 0.0 && t_prev > 0.0 && t_prev < kPi) {
                if (ns.nodes.empty() || ns.nodes.back() < t_prev) {
                    ns.nodes.push_back(t_prev);
                    ns.residuals.push_back(0.0);
                }
            } else if (y != 0.0 && (y > 0) != (y_prev > 0)) {
                double lo = t_prev, hi = t, flo = y_prev;
                while (hi - lo > 1e-12) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = value(mid);
                    if (fm == 0.0) {
                        lo = hi = mid;
                        break;
                    }
                    if ((fm > 0) == (flo > 0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                const double root = 0.5 * (lo + hi);
                ns.nodes.push_back(root);
                ns.residuals.push_back(std::abs(value(root)));
            }
            t_prev = t;
            y_prev = y;
        }
    }

    const long expect = std::lround(ns.mu);
    const long count = static_cast<long>(ns.nodes.size());
    if (std::abs(count - expect) > 1) {
        ns.diagnostics.push_back("node count " + std::to_string(count) + " differs from round(mu) = " +
                                 std::to_string(expect) + " by more than one");
    }
    return ns;
}

double t_factor(const ProblemSpec& spec, double mu, double t, int panel_scale) {
    if (mu == 0.0) throw std::invalid_argument("t_factor: mu must be nonzero");
    const auto& a = spec.alpha;
    const auto ints = partial_integrals(spec, mu, t, panel_scale);
    return mu * a.c2_plus + a.c2_minus - 0.5 * a.c2_plus * ints.q_sin_delay -
           a.c2_minus / (2.0 * mu) * ints.q_sin_delay + a.c1_plus / (2.0 * mu) * ints.q_cos_delay;
}

double nodal_asymptotic(const ProblemSpec& spec, SpectralIndex n, int j) {
    const int nn = n.magnitude;
    if (nn < 1 || j < 1 || j > nn) throw std::out_of_range("nodal_asymptotic: j outside 1..n");
    const double mu0 = mu_seed(n);
    if (mu0 == 0.0) throw std::invalid_argument("nodal_asymptotic: zero seed");
    const auto& a = spec.alpha;
    const auto oi = oscillatory_integrals(spec, mu0);
    const double lead =
        (j - 0.5) * kPi * (1.0 / mu0 - (spec.b_const() + oi.u_plus) / (mu0 * mu0 * mu0 * kPi));
    const double upper = j * kPi / nn;
    const double ic = partial_integrals(spec, mu0, upper).q_cos_delay;
    if (j <= nn / 2) {
        const double t0 = t_factor(spec, mu0, upper);
        return lead + a.c1_plus / (mu0 * t0) + a.c2_plus / (2.0 * mu0 * t0) * ic;
    }
    return lead + (a.c1_plus / a.c2_plus + 0.5 * ic) / (mu0 * mu0);
}

int node_index_fn(const NodalSet& ns, double t) {
    return static_cast<int>(std::upper_bound(ns.nodes.begin(), ns.nodes.end(), t) - ns.nodes.begin());
}

} // namespace rsl
