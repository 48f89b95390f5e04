#include "rsl/inverse.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rsl/asymptotics.hpp"

namespace rsl {

namespace {

constexpr double kPi = std::numbers::pi;

struct Sample {
    double x;
    double y;
};

std::vector<Sample> unique_samples(const LimitFunctionEstimate& f) {
    std::vector<Sample> s;
    s.reserve(f.grid.size());
    for (std::size_t i = 0; i < f.grid.size(); ++i) s.push_back({f.node_t[i], f.f_hat[i]});
    std::stable_sort(s.begin(), s.end(), [](const Sample& a, const Sample& b) { return a.x < b.x; });
    s.erase(std::unique(s.begin(), s.end(), [](const Sample& a, const Sample& b) { return a.x == b.x; }), s.end());
    return s;
}

// Indices [lo, lo + k) of the k samples nearest to t.
std::size_t nearest_window(const std::vector<Sample>& s, double t, std::size_t k) {
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(s.begin(), s.end(), t, [](const Sample& a, double v) { return a.x < v; }) - s.begin());
    std::size_t lo = pos, hi = pos;  // window [lo, hi)
    while (hi - lo < k) {
        if (lo == 0) {
            ++hi;
        } else if (hi == s.size()) {
            --lo;
        } else if (t - s[lo - 1].x <= s[hi].x - t) {
            --lo;
        } else {
            ++hi;
        }
    }
    return lo;
}

// Least-squares quadratic in u = (x - t) / scale; returns d/dx at t.
double ls_slope(const std::vector<Sample>& s, std::size_t lo, std::size_t k, double t) {
    double scale = 0.0;
    for (std::size_t i = lo; i < lo + k; ++i) scale = std::max(scale, std::abs(s[i].x - t));
    if (scale == 0.0) scale = 1.0;
    std::array<std::array<double, 4>, 3> m{};
    for (std::size_t i = lo; i < lo + k; ++i) {
        const double u = (s[i].x - t) / scale;
        const double basis[3] = {1.0, u, u * u};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] += basis[r] * basis[c];
            m[r][3] += basis[r] * s[i].y;
        }
    }
    // Gaussian elimination with partial pivoting on the 3x3 normal equations.
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        }
        std::swap(m[col], m[piv]);
        if (m[col][col] == 0.0) throw std::runtime_error("reconstruct: degenerate stencil");
        for (int r = col + 1; r < 3; ++r) {
            const double fct = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= fct * m[col][c];
        }
    }
    std::array<double, 3> coef{};
    for (int r = 2; r >= 0; --r) {
        double v = m[r][3];
        for (int c = r + 1; c < 3; ++c) v -= m[r][c] * coef[c];
        coef[r] = v / m[r][r];
    }
    return coef[1] / scale;
}

double lagrange3(const Sample& a, const Sample& b, const Sample& c, double x) {
    return a.y * (x - b.x) * (x - c.x) / ((a.x - b.x) * (a.x - c.x)) +
           b.y * (x - a.x) * (x - c.x) / ((b.x - a.x) * (b.x - c.x)) +
           c.y * (x - a.x) * (x - b.x) / ((c.x - a.x) * (c.x - b.x));
}

} // namespace

std::string_view branch_name(LimitBranch b) noexcept {
    return b == LimitBranch::DelayZero ? "delta_zero" : "delta_nonzero";
}

LimitBranch limit_branch(const ProblemSpec& spec) {
    if (spec.delay_is_zero()) return LimitBranch::DelayZero;
    int zeros = 0;
    for (int k = 1; k + 1 < kValidationGrid; ++k) {
        const double t = kPi * k / (kValidationGrid - 1);
        if (spec.delay(t) == 0.0) ++zeros;
    }
    if (zeros == 0) return LimitBranch::DelayNonzero;
    if (zeros == kValidationGrid - 2) return LimitBranch::DelayZero;
    throw std::invalid_argument("limit function undefined: Delta vanishes on part of (0, pi)");
}

LimitFunctionEstimate estimate_limit_function(const std::vector<NodalSet>& sets, const std::vector<double>& grid,
                                              LimitBranch branch, bool richardson) {
    if (sets.empty()) throw std::invalid_argument("estimate_limit_function: no nodal sets");
    std::vector<const NodalSet*> order;
    for (const auto& s : sets) {
        if (s.nodes.empty()) throw std::invalid_argument("estimate_limit_function: empty nodal set " + s.index.str());
        order.push_back(&s);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const NodalSet* a, const NodalSet* b) { return a->index.magnitude > b->index.magnitude; });
    const NodalSet& top = *order.front();
    const NodalSet* second = richardson && order.size() > 1 ? order[1] : nullptr;

    auto sample = [](const NodalSet& ns, double t, double& node, bool& gap) {
        const int count = static_cast<int>(ns.nodes.size());
        int j = node_index_fn(ns, t) + 1;
        gap = j > count;
        j = std::min(j, count);
        node = ns.nodes[static_cast<std::size_t>(j - 1)];
        return ns.mu0 * ns.mu0 * (node - (j - 0.5) * kPi / ns.mu0);
    };

    LimitFunctionEstimate est;
    est.grid = grid;
    est.branch = branch;
    est.source_n = top.index.magnitude;
    est.secondary_n = second ? second->index.magnitude : 0;
    for (double t : grid) {
        double node = 0.0;
        bool gap = false;
        double f = sample(top, t, node, gap);
        if (second) {
            double node2 = 0.0;
            bool gap2 = false;
            const double f2 = sample(*second, t, node2, gap2);
            const double s1 = second->mu0, s2 = top.mu0;
            f = (s2 * f - s1 * f2) / (s2 - s1);
            gap = gap || gap2;
        }
        est.f_hat.push_back(f);
        est.node_t.push_back(node);
        est.gap.push_back(gap ? 1 : 0);
    }
    return est;
}

double limit_function_exact(const ProblemSpec& spec, double t) {
    const double a_ratio = spec.alpha.c1_plus / spec.alpha.c2_plus;
    const double b = spec.b_const();
    if (limit_branch(spec) == LimitBranch::DelayNonzero) return b * t / kPi - a_ratio;
    const double u0 = oscillatory_integrals(spec, 0.0).u_plus;
    const double q_int = partial_integrals(spec, 0.0, t).q_cos_delay;
    return (b + u0) * t / kPi - a_ratio - 0.5 * q_int;
}

LimitFunctionEstimate sample_limit_function(const std::function<double(double)>& f, const std::vector<double>& grid,
                                            LimitBranch branch) {
    LimitFunctionEstimate est;
    est.grid = grid;
    est.node_t = grid;
    est.branch = branch;
    est.gap.assign(grid.size(), 0);
    for (double t : grid) est.f_hat.push_back(f(t));
    return est;
}

ReconstructionResult reconstruct_potential(const LimitFunctionEstimate& f, double u_plus_zero, int stencil) {
    if (f.branch != LimitBranch::DelayZero) {
        throw std::invalid_argument("reconstruct_potential: only defined for an identically zero delay");
    }
    if (stencil < 3) throw std::invalid_argument("reconstruct_potential: stencil must be at least 3");
    const auto s = unique_samples(f);
    const auto k = static_cast<std::size_t>(stencil);
    if (s.size() < k) throw std::invalid_argument("reconstruct_potential: stencil larger than grid");

    ReconstructionResult r;
    r.grid = f.grid;
    r.u_plus_zero = u_plus_zero;
    r.stencil = stencil;
    r.f_zero = lagrange3(s[0], s[1], s[2], 0.0);
    const std::size_t n = s.size();
    r.f_pi = lagrange3(s[n - 3], s[n - 2], s[n - 1], kPi);
    const double level = 2.0 / kPi * (u_plus_zero + r.f_pi - r.f_zero);
    for (double t : f.grid) {
        const double fp = ls_slope(s, nearest_window(s, t, k), k, t);
        r.f_prime.push_back(fp);
        r.q_hat.push_back(level - 2.0 * fp);
    }
    return r;
}

std::vector<double> uniform_grid(int n) {
    std::vector<double> g(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)] = i == n ? kPi : kPi * i / n;
    return g;
}

} // namespace rsl
