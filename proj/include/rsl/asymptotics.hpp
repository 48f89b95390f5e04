#pragma once

#include "rsl/index.hpp"
#include "rsl/problem.hpp"

namespace rsl {

/// U+/- = 1/2 int q cos/sin(mu Delta),  V+/- = 1/2 int q cos/sin(mu (2 tau - Delta)), over [0, pi].
struct OscillatoryIntegrals {
    double mu = 0.0;
    double u_plus = 0.0;
    double u_minus = 0.0;
    double v_plus = 0.0;
    double v_minus = 0.0;
    int panels = 0;
    double error_estimate = 0.0;
};

OscillatoryIntegrals oscillatory_integrals(const ProblemSpec& spec, double mu);

/// Same integrals, unhalved, over [0, t].
struct PartialIntegrals {
    double q_cos_delay = 0.0;   // int_0^t q cos(mu Delta)
    double q_sin_delay = 0.0;   // int_0^t q sin(mu Delta)
    double q_cos_mirror = 0.0;  // int_0^t q cos(mu (2 tau - Delta))
    double q_sin_mirror = 0.0;  // int_0^t q sin(mu (2 tau - Delta))
};

/// `panel_scale` multiplies the default panel count (used for refinement checks).
PartialIntegrals partial_integrals(const ProblemSpec& spec, double mu, double t, int panel_scale = 1);

/// mu_n^0 - (B + U+(mu_n^0) + V+(mu_n^0)) / (mu_n^0 pi), B = beta1+/beta2+ + alpha1+/alpha2+.
/// Throws std::invalid_argument for a zero seed.
double mu_asymptotic(const ProblemSpec& spec, SpectralIndex n);

struct AsymptoticState {
    double y = 0.0;
    double yp = 0.0;
};

/// Leading-order expansions of phi and phi' with the remainder dropped. Segments
/// after the first divide by the product of the jump factors crossed so far.
AsymptoticState phi_asymptotic(const ProblemSpec& spec, double t, double mu);

/// mu^3 and mu^2 orders of the characteristic function.
double xi_asymptotic(const ProblemSpec& spec, double mu);

} // namespace rsl
