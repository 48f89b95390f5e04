#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rsl/index.hpp"
#include "rsl/integrate.hpp"

namespace rsl {

/// (mu beta1+ + beta1-) phi(pi) - (mu beta2+ + beta2-) phi'(pi)
template <class S>
S xi(const ProblemSpec& spec, S mu, const SolverControl& control = {});

/// mu^3 alpha2+ beta2+ / prod(delta) sin(mu pi)
double xi0(const ProblemSpec& spec, double mu);
cplx xi0(const ProblemSpec& spec, cplx mu);

enum class RootMethod { Bisection, Secant, ComplexSecant, SmallRootScan };
std::string_view method_name(RootMethod m) noexcept;

struct EigenvalueRecord {
    SpectralIndex index;
    double seed = 0.0;
    double estimate = 0.0;
    cplx root{};
    double residual = 0.0;
    RootMethod method = RootMethod::Bisection;
    int iterations = 0;
    bool converged = false;
    int multiplicity = 1;  // > 1 only for degenerate scan clusters
    std::string note;

    double mu() const noexcept { return root.real(); }
    bool is_real() const noexcept { return root.imag() == 0.0; }
};

/// Residual acceptance bound 1e-8 (1 + |mu|^3).
double residual_tolerance(double abs_mu) noexcept;

/// Root near the large-index estimate: real bracketing first (half-width
/// radius, then 2x and 4x), complex secant as a fallback. Failure leaves
/// converged = false with a note.
EigenvalueRecord find_eigenvalue(const ProblemSpec& spec, SpectralIndex n, const SolverControl& control = {},
                                 double radius = 0.25);

struct SmallRootScan {
    std::vector<EigenvalueRecord> records;  // +-0, +-1 first, then any further roots outward
    std::vector<std::string> diagnostics;
    int roots_with_multiplicity = 0;
};

/// Real roots of xi in [-bound, bound] from a 1e-3 grid. The four roots closest
/// to the origin (counted with multiplicity) become -1, -0, +0, +1 in ascending order.
SmallRootScan scan_small_roots(const ProblemSpec& spec, const SolverControl& control = {}, double bound = 2.5,
                               int jobs = 1);

/// |xi'(mu_n)| by central difference with step 1e-6 (1 + |mu_n|).
double verify_simplicity(const ProblemSpec& spec, const EigenvalueRecord& rec, const SolverControl& control = {});

struct SpectrumSweep {
    std::vector<EigenvalueRecord> records;  // ascending index order
    std::vector<std::string> diagnostics;
};

/// All indices with n_min <= |n| <= n_max, both signs. +-0 and +-1 come from the
/// small-root scan, everything else from find_eigenvalue.
SpectrumSweep sweep_spectrum(const ProblemSpec& spec, int n_min, int n_max, const SolverControl& control = {},
                             int jobs = 1);

} // namespace rsl
