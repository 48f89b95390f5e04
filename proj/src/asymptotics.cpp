#include "rsl/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rsl/quadrature.hpp"

namespace rsl {

namespace {

constexpr double kPi = std::numbers::pi;

PartialIntegrals integrate_range(const ProblemSpec& spec, double mu, double t, int panels) {
    PartialIntegrals r;
    if (!(t > 0.0)) return r;
    const bool no_delay = spec.delay_is_zero();
    const auto rule = composite_gauss(0.0, t, panels, spec.theta);
    for (std::size_t k = 0; k < rule.x.size(); ++k) {
        const double x = rule.x[k];
        const double wq = rule.w[k] * spec.q(x);
        if (wq == 0.0) continue;
        const double d = no_delay ? 0.0 : spec.delay(x);
        const double pd = mu * d;
        const double pm = mu * (2.0 * x - d);
        r.q_cos_delay += wq * std::cos(pd);
        r.q_sin_delay += wq * std::sin(pd);
        r.q_cos_mirror += wq * std::cos(pm);
        r.q_sin_mirror += wq * std::sin(pm);
    }
    return r;
}

} // namespace

PartialIntegrals partial_integrals(const ProblemSpec& spec, double mu, double t, int panel_scale) {
    return integrate_range(spec, mu, t, oscillatory_panels(mu) * std::max(1, panel_scale));
}

OscillatoryIntegrals oscillatory_integrals(const ProblemSpec& spec, double mu) {
    const int panels = oscillatory_panels(mu);
    const auto coarse = integrate_range(spec, mu, kPi, panels);
    const auto fine = integrate_range(spec, mu, kPi, 2 * panels);

    OscillatoryIntegrals r;
    r.mu = mu;
    r.u_plus = 0.5 * coarse.q_cos_delay;
    r.u_minus = 0.5 * coarse.q_sin_delay;
    r.v_plus = 0.5 * coarse.q_cos_mirror;
    r.v_minus = 0.5 * coarse.q_sin_mirror;
    r.panels = panels;
    r.error_estimate = 0.5 * std::max({std::abs(coarse.q_cos_delay - fine.q_cos_delay),
                                       std::abs(coarse.q_sin_delay - fine.q_sin_delay),
                                       std::abs(coarse.q_cos_mirror - fine.q_cos_mirror),
                                       std::abs(coarse.q_sin_mirror - fine.q_sin_mirror)});
    return r;
}

double mu_asymptotic(const ProblemSpec& spec, SpectralIndex n) {
    const double mu0 = mu_seed(n);
    if (mu0 == 0.0) throw std::invalid_argument("mu_asymptotic: index " + n.str() + " has zero seed");
    const auto oi = oscillatory_integrals(spec, mu0);
    return mu0 - (spec.b_const() + oi.u_plus + oi.v_plus) / (mu0 * kPi);
}

AsymptoticState phi_asymptotic(const ProblemSpec& spec, double t, double mu) {
    const auto& a = spec.alpha;
    const auto ints = partial_integrals(spec, mu, t);
    const double c = std::cos(mu * t), s = std::sin(mu * t);

    // int q sin(mu(t - Delta)), int q sin(mu(t - 2 tau + Delta)) and cosine companions
    const double a1 = s * ints.q_cos_delay - c * ints.q_sin_delay;
    const double a2 = s * ints.q_cos_mirror - c * ints.q_sin_mirror;
    const double b1 = c * ints.q_cos_delay + s * ints.q_sin_delay;
    const double b2 = c * ints.q_cos_mirror + s * ints.q_sin_mirror;

    const int seg = segment_of(spec, t);
    AsymptoticState r;
    if (seg == 0) {
        r.y = mu * a.c2_plus * c + a.c2_minus * c - a.c1_plus * s - 0.5 * a.c2_plus * (a1 + a2) +
              (a.c1_minus * s - 0.5 * a.c2_minus * (a1 + a2) + 0.5 * a.c1_plus * (b1 - b2)) / mu;
        r.yp = -mu * mu * a.c2_plus * s +
               mu * (-a.c2_minus * s - a.c1_plus * c - 0.5 * a.c2_plus * (b1 + b2)) + a.c1_minus * c -
               0.5 * a.c2_minus * (b1 + b2) - 0.5 * a.c1_plus * (a1 - a2);
        return r;
    }
    double prod = 1.0;
    for (int i = 0; i < seg; ++i) prod *= spec.delta[static_cast<std::size_t>(i)];
    r.y = (mu * a.c2_plus * c + (a.c2_minus * c - a.c1_plus * s) - 0.5 * a.c2_plus * (a1 + a2)) / prod;
    r.yp = -(a.c2_plus * mu * mu * s + mu * (-a.c2_minus * s - a.c1_plus * c - 0.5 * a.c2_plus * (b1 + b2))) / prod;
    return r;
}

double xi_asymptotic(const ProblemSpec& spec, double mu) {
    const auto& a = spec.alpha;
    const auto& b = spec.beta;
    const auto oi = oscillatory_integrals(spec, mu);
    const double p = spec.delta_product();
    const double ab = a.c2_plus * b.c2_plus;
    const double cos_part = a.c2_plus * b.c1_plus + a.c1_plus * b.c2_plus + ab * (oi.u_plus + oi.v_plus);
    const double sin_part = a.c2_minus * b.c2_plus + a.c2_plus * b.c2_minus + ab * (oi.u_minus + oi.v_minus);
    return mu * mu * mu * ab / p * std::sin(mu * kPi) +
           mu * mu / p * (cos_part * std::cos(mu * kPi) + sin_part * std::sin(mu * kPi));
}

} // namespace rsl
