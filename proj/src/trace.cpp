#include "rsl/trace.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "rsl/asymptotics.hpp"

namespace rsl {

namespace {
constexpr double kPi = std::numbers::pi;
}

double trace_rhs(const ProblemSpec& spec) {
    const auto oi = oscillatory_integrals(spec, 0.0);
    const double c = spec.b_const() + oi.u_plus + oi.v_plus;
    const double d = spec.alpha.c2_minus / spec.alpha.c2_plus + spec.beta.c2_minus / spec.beta.c2_plus;
    return -(2.0 / kPi) * c - c * c + d * d;
}

TraceReport trace_partial_sums(const ProblemSpec& spec, const std::vector<EigenvalueRecord>& records, int n_max) {
    std::map<int, const EigenvalueRecord*> by_rank;
    for (const auto& r : records) by_rank[r.index.rank()] = &r;

    auto need = [&](SpectralIndex idx) -> const EigenvalueRecord& {
        const auto it = by_rank.find(idx.rank());
        if (it == by_rank.end()) throw std::invalid_argument("trace: missing eigenvalue index " + idx.str());
        if (!it->second->converged) throw std::invalid_argument("trace: index " + idx.str() + " did not converge");
        return *it->second;
    };
    auto mu_sq = [](const EigenvalueRecord& r) { return (r.root * r.root).real(); };

    TraceReport rep;
    rep.n_max = n_max;
    rep.rhs = trace_rhs(spec);
    rep.zero_contribution = mu_sq(need(SpectralIndex::neg(0))) + mu_sq(need(SpectralIndex::pos(0)));

    const double b = spec.b_const();
    double s = rep.zero_contribution;
    rep.partial_sums.push_back(s);
    for (int n = 1; n <= n_max; ++n) {
        double pair = 0.0;
        for (int sign : {-1, +1}) {
            const SpectralIndex idx{sign, n};
            const auto& r = need(idx);
            TraceTerm t;
            t.n = n;
            t.sign = sign;
            t.mu_sq = mu_sq(r);
            const double mu0 = mu_seed(idx);
            t.mu0_sq = mu0 * mu0;
            const auto oi = oscillatory_integrals(spec, mu0);
            t.u_plus = oi.u_plus;
            t.v_plus = oi.v_plus;
            t.correction = (4.0 / kPi) * (b + oi.u_plus + oi.v_plus);
            t.term = t.mu_sq - t.mu0_sq + t.correction;
            pair += t.term;
            rep.terms.push_back(t);
        }
        s += pair;
        rep.partial_sums.push_back(s);
    }

    if (n_max >= 2) {
        const auto gap = [&](int k) { return std::abs(rep.partial_sums[static_cast<std::size_t>(k)] - rep.rhs); };
        int increases = 0;
        for (int k = 1; k <= n_max; ++k) increases += gap(k) > gap(k - 1) ? 1 : 0;
        if (increases > 0) {
            rep.diagnostics.push_back("gap to rhs grew in " + std::to_string(increases) + " of " +
                                      std::to_string(n_max) + " steps");
        }
    }
    return rep;
}

} // namespace rsl
