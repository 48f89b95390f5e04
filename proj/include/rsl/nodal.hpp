#pragma once

#include <string>
#include <vector>

#include "rsl/spectrum.hpp"

namespace rsl {

struct NodalSet {
    SpectralIndex index;
    double mu = 0.0;    // eigenvalue root
    double mu0 = 0.0;   // seed mu_n^0
    std::vector<double> nodes;
    std::vector<double> residuals;  // |phi(node)|
    double amplitude = 0.0;         // max |phi| on the sampling grid
    std::vector<std::string> diagnostics;
};

/// Zeros of phi(., mu_n) in (0, pi): sign changes on a grid of step
/// pi / (20 (1 + mu_n)) inside each segment, refined by bisection to 1e-12.
NodalSet find_nodes(const ProblemSpec& spec, const EigenvalueRecord& rec, const SolverControl& control = {});

/// mu a2+ + a2- - (a2+/2) Is - (a2-/(2 mu)) Is + (a1+/(2 mu)) Ic, with Is, Ic the
/// integrals of q sin(mu Delta), q cos(mu Delta) over [0, t].
double t_factor(const ProblemSpec& spec, double mu, double t, int panel_scale = 1);

/// Large-index nodal formula for node j of index n (n >= 1, 1 <= j <= n).
/// j <= floor(n/2) uses the T-factor form, larger j the second-segment form.
double nodal_asymptotic(const ProblemSpec& spec, SpectralIndex n, int j);

/// Largest j with node_j <= t (1-based), 0 when t precedes the first node.
int node_index_fn(const NodalSet& ns, double t);

} // namespace rsl
