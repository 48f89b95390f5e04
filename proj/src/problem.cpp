#include "rsl/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rsl/error.hpp"

namespace rsl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRoundoff = 1e-12;

void violation(ValidationReport& r, std::string rule, std::optional<double> t, std::string msg) {
    r.violations.push_back({std::move(rule), t, std::move(msg)});
}

} // namespace

double ProblemSpec::delta_product() const noexcept {
    double p = 1.0;
    for (double d : delta) p *= d;
    return p;
}

double ProblemSpec::b_const() const noexcept {
    return beta.c1_plus / beta.c2_plus + alpha.c1_plus / alpha.c2_plus;
}

ValidationReport validate(const ProblemSpec& spec) {
    ValidationReport rep;
    const int m = spec.m();

    if (spec.delta.size() != spec.theta.size()) {
        violation(rep, "delta_count", std::nullopt,
                  "expected " + std::to_string(m) + " jump factors, got " + std::to_string(spec.delta.size()));
    }
    for (int i = 0; i < m; ++i) {
        const double th = spec.theta[static_cast<std::size_t>(i)];
        if (!(th > 0.0 && th < kPi)) {
            violation(rep, "theta_range", th, "theta_" + std::to_string(i + 1) + " must lie in (0, pi)");
        }
        if (i > 0 && !(th > spec.theta[static_cast<std::size_t>(i - 1)])) {
            violation(rep, "theta_order", th, "theta must be strictly increasing");
        }
    }
    for (std::size_t i = 0; i < spec.delta.size(); ++i) {
        if (spec.delta[i] == 0.0 || !std::isfinite(spec.delta[i])) {
            violation(rep, "delta_nonzero", std::nullopt, "delta_" + std::to_string(i + 1) + " must be nonzero");
        }
    }
    if (spec.alpha.c2_plus * spec.beta.c2_plus == 0.0) {
        violation(rep, "leading_coefficients", std::nullopt, "alpha2+ * beta2+ must be nonzero");
    }

    const bool structure_ok = rep.violations.empty();
    bool segment_warned = false;
    for (int k = 0; k < kValidationGrid; ++k) {
        const double t = kPi * k / (kValidationGrid - 1);
        double d = 0.0;
        try {
            d = spec.delay(t);
        } catch (const DomainError& e) {
            violation(rep, "delay_domain", t, e.what());
            continue;
        } catch (const std::exception& e) {
            violation(rep, "delay_domain", t, e.what());
            continue;
        }
        try {
            (void)spec.q(t);
        } catch (const std::exception& e) {
            violation(rep, "q_domain", t, e.what());
        }
        if (d < -kRoundoff) {
            violation(rep, "delay_nonnegative", t, "Delta(t) < 0");
        }
        if (t - d < -kRoundoff) {
            violation(rep, "delayed_argument_negative", t, "t - Delta(t) < 0");
        }
        // t - Delta(t) >= theta_i on (theta_i, theta_{i+1}) for i >= 2 is advisory only.
        if (structure_ok && !segment_warned && m >= 2) {
            const int seg = segment_of(spec, t);
            if (seg >= 2 && t > segment_start(spec, seg)) {
                const double floor = segment_start(spec, seg);
                if (t - d < floor - kRoundoff) {
                    rep.warnings.push_back({"delayed_argument_crosses_segment", t,
                                            "t - Delta(t) falls before the segment start " +
                                                std::to_string(floor)});
                    segment_warned = true;
                }
            }
        }
    }
    rep.pass = rep.violations.empty();
    return rep;
}

int segment_of(const ProblemSpec& spec, double t) {
    if (!(t >= 0.0 && t <= kPi)) throw std::out_of_range("segment_of: t outside [0, pi]");
    const auto it = std::upper_bound(spec.theta.begin(), spec.theta.end(), t);
    return static_cast<int>(it - spec.theta.begin());
}

double segment_start(const ProblemSpec& spec, int i) {
    return i == 0 ? 0.0 : spec.theta[static_cast<std::size_t>(i - 1)];
}

double segment_end(const ProblemSpec& spec, int i) {
    return i == spec.m() ? kPi : spec.theta[static_cast<std::size_t>(i)];
}

} // namespace rsl
