#include "rsl/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "rsl/asymptotics.hpp"
#include "rsl/parallel.hpp"

namespace rsl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBracketWidth = 1e-12;
constexpr double kScanStep = 1e-3;

struct BracketResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
};

// Brent-Dekker on a sign-changing bracket; stops once the bracket is narrower than kBracketWidth.
BracketResult refine_bracket(const std::function<double(double)>& f, double a, double b, double fa, double fb) {
    if (fa == 0.0) return {a, fa, 0};
    if (fb == 0.0) return {b, fb, 0};
    double c = a, fc = fa, d = b - a, e = d;
    int it = 0;
    for (; it < 200; ++it) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.25 * kBracketWidth;
        const double half = 0.5 * (c - b);
        if (std::abs(c - b) <= kBracketWidth || std::abs(half) <= tol || fb == 0.0) break;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * half * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * half * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (half > 0 ? tol : -tol);
        fb = f(b);
    }
    // b is the best estimate; report whichever endpoint has the smaller residual.
    if (std::abs(fc) < std::abs(fb)) return {c, fc, it};
    return {b, fb, it};
}

// Golden-section search for a minimum of |f| on [a, b].
double golden_min(const std::function<double(double)>& g, double a, double b, int iters = 60) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double g1 = g(x1), g2 = g(x2);
    for (int k = 0; k < iters && b - a > 1e-13; ++k) {
        if (g1 < g2) {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - r * (b - a);
            g1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + r * (b - a);
            g2 = g(x2);
        }
    }
    return g1 < g2 ? x1 : x2;
}

struct RawRoot {
    double mu;
    double residual;
    int multiplicity;
    int iterations;
};

int estimate_multiplicity(const std::function<double(double)>& f, double mu) {
    const double eps = 1e-3;
    const double a = std::abs(f(mu + eps)) + std::abs(f(mu - eps));
    const double b = std::abs(f(mu + 2 * eps)) + std::abs(f(mu - 2 * eps));
    if (a == 0.0 || b == 0.0) return 1;
    return std::max(1, static_cast<int>(std::lround(std::log2(b / a))));
}

} // namespace

template <class S>
S xi(const ProblemSpec& spec, S mu, const SolverControl& control) {
    const auto end = shoot_endpoint<S>(spec, mu, control);
    const auto& b = spec.beta;
    S v = (mu * b.c1_plus + b.c1_minus) * end.y - (mu * b.c2_plus + b.c2_minus) * end.yp;
    if constexpr (!std::is_same_v<S, double>) {
        if (mu.imag() == 0.0 && std::abs(v.imag()) <= 1e-12 * std::abs(v)) v.imag(0.0);
    }
    return v;
}

template double xi(const ProblemSpec&, double, const SolverControl&);
template cplx xi(const ProblemSpec&, cplx, const SolverControl&);

double xi0(const ProblemSpec& spec, double mu) {
    return mu * mu * mu * spec.alpha.c2_plus * spec.beta.c2_plus / spec.delta_product() * std::sin(mu * kPi);
}

cplx xi0(const ProblemSpec& spec, cplx mu) {
    return mu * mu * mu * (spec.alpha.c2_plus * spec.beta.c2_plus / spec.delta_product()) * std::sin(mu * kPi);
}

std::string_view method_name(RootMethod m) noexcept {
    switch (m) {
        case RootMethod::Bisection: return "bisection";
        case RootMethod::Secant: return "secant";
        case RootMethod::ComplexSecant: return "complex-secant";
        case RootMethod::SmallRootScan: return "small-root-scan";
    }
    return "?";
}

double residual_tolerance(double abs_mu) noexcept { return 1e-8 * (1.0 + abs_mu * abs_mu * abs_mu); }

EigenvalueRecord find_eigenvalue(const ProblemSpec& spec, SpectralIndex n, const SolverControl& control,
                                 double radius) {
    EigenvalueRecord rec;
    rec.index = n;
    rec.seed = mu_seed(n);
    rec.estimate = mu_asymptotic(spec, n);
    if (std::abs(rec.seed) < 2.0) rec.note = "seed below asymptotic range";

    const std::function<double(double)> f = [&](double mu) { return xi<double>(spec, mu, control); };
    const double est = rec.estimate;
    int evals = 0;

    for (int level = 0; level < 3; ++level) {
        const double r = radius * (1 << level);
        constexpr int kSub = 8;
        std::vector<double> xs(kSub + 1), fs(kSub + 1);
        for (int k = 0; k <= kSub; ++k) {
            xs[k] = est - r + 2.0 * r * k / kSub;
            fs[k] = f(xs[k]);
            ++evals;
        }
        int best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (int k = 0; k < kSub; ++k) {
            if (fs[k] == 0.0 || (fs[k] > 0) != (fs[k + 1] > 0)) {
                const double dist = std::abs(0.5 * (xs[k] + xs[k + 1]) - est);
                if (dist < best_dist) {
                    best_dist = dist;
                    best = k;
                }
            }
        }
        if (best < 0) continue;
        const auto br = refine_bracket(f, xs[best], xs[best + 1], fs[best], fs[best + 1]);
        rec.root = br.x;
        rec.residual = std::abs(br.fx);
        rec.iterations = evals + br.iterations;
        rec.method = RootMethod::Bisection;
        rec.converged = rec.residual <= residual_tolerance(std::abs(br.x));
        if (rec.converged) return rec;
    }

    // Complex secant from two nearby starts.
    cplx z0 = est, z1 = cplx(est, 0.01);
    cplx f0 = xi<cplx>(spec, z0, control), f1 = xi<cplx>(spec, z1, control);
    evals += 2;
    for (int it = 0; it < 60; ++it) {
        if (f1 == f0) break;
        const cplx z2 = z1 - f1 * (z1 - z0) / (f1 - f0);
        z0 = z1;
        f0 = f1;
        z1 = z2;
        f1 = xi<cplx>(spec, z1, control);
        ++evals;
        if (std::abs(z1 - z0) <= 1e-12 * (1.0 + std::abs(z1)) || std::abs(f1) == 0.0) break;
    }
    rec.iterations = evals;
    rec.residual = std::abs(f1);
    const bool real = std::abs(z1.imag()) <= 1e-10 * (1.0 + std::abs(z1));
    if (real) {
        rec.root = z1.real();
        rec.residual = std::abs(f(z1.real()));
        rec.method = RootMethod::Secant;
    } else {
        rec.root = z1;
        rec.method = RootMethod::ComplexSecant;
    }
    rec.converged = std::isfinite(rec.residual) && rec.residual <= residual_tolerance(std::abs(rec.root));
    if (!rec.converged) {
        if (!rec.note.empty()) rec.note += "; ";
        rec.note += "no root met the residual bound";
    }
    return rec;
}

SmallRootScan scan_small_roots(const ProblemSpec& spec, const SolverControl& control, double bound, int jobs) {
    const std::function<double(double)> f = [&](double mu) { return xi<double>(spec, mu, control); };
    const int kmax = static_cast<int>(std::lround(bound / kScanStep));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(2 * kmax + 1));
    for (int k = -kmax; k <= kmax; ++k) grid.push_back(k * kScanStep);
    const std::vector<double> vals = parallel_map(grid, jobs, [&](double mu) { return f(mu); });

    std::vector<RawRoot> raw;
    const std::size_t n = grid.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (vals[k] == 0.0) {
            raw.push_back({grid[k], 0.0, estimate_multiplicity(f, grid[k]), 0});
            continue;
        }
        if (k + 1 < n && vals[k + 1] != 0.0 && (vals[k] > 0) != (vals[k + 1] > 0)) {
            const auto br = refine_bracket(f, grid[k], grid[k + 1], vals[k], vals[k + 1]);
            raw.push_back({br.x, std::abs(br.fx), 1, br.iterations});
            continue;
        }
        // Touching minimum of |xi| without a sign change on the grid.
        if (k > 0 && k + 1 < n && vals[k - 1] != 0.0 && vals[k + 1] != 0.0 &&
            (vals[k - 1] > 0) == (vals[k] > 0) && (vals[k + 1] > 0) == (vals[k] > 0) &&
            std::abs(vals[k]) < std::abs(vals[k - 1]) && std::abs(vals[k]) < std::abs(vals[k + 1])) {
            const double xm = golden_min([&](double x) { return std::abs(f(x)); }, grid[k - 1], grid[k + 1]);
            const double fm = f(xm);
            if ((fm > 0) != (vals[k] > 0) && fm != 0.0) {
                const auto left = refine_bracket(f, grid[k - 1], xm, vals[k - 1], fm);
                const auto right = refine_bracket(f, xm, grid[k + 1], fm, vals[k + 1]);
                raw.push_back({left.x, std::abs(left.fx), 1, left.iterations});
                raw.push_back({right.x, std::abs(right.fx), 1, right.iterations});
            } else if (std::abs(fm) <= residual_tolerance(std::abs(xm))) {
                raw.push_back({xm, std::abs(fm), estimate_multiplicity(f, xm), 60});
            }
        }
    }

    SmallRootScan out;
    std::vector<RawRoot> expanded;
    for (const auto& r : raw) {
        for (int k = 0; k < r.multiplicity; ++k) expanded.push_back(r);
        out.roots_with_multiplicity += r.multiplicity;
    }
    if (out.roots_with_multiplicity != 4) {
        out.diagnostics.push_back("found " + std::to_string(out.roots_with_multiplicity) +
                                  " roots (with multiplicity) in [-" + std::to_string(bound) + ", " +
                                  std::to_string(bound) + "], expected 4");
    }

    // The four closest to the origin (ties toward the negative side) become -1, -0, +0, +1.
    std::vector<std::size_t> order(expanded.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ma = std::abs(expanded[a].mu), mb = std::abs(expanded[b].mu);
        if (ma != mb) return ma < mb;
        return expanded[a].mu < expanded[b].mu;
    });
    const std::size_t inner = std::min<std::size_t>(4, order.size());
    std::vector<std::size_t> core(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(inner));
    std::vector<std::size_t> rest(order.begin() + static_cast<std::ptrdiff_t>(inner), order.end());
    std::stable_sort(core.begin(), core.end(),
                     [&](std::size_t a, std::size_t b) { return expanded[a].mu < expanded[b].mu; });

    auto make = [&](const RawRoot& r, SpectralIndex idx) {
        EigenvalueRecord rec;
        rec.index = idx;
        rec.seed = mu_seed(idx);
        rec.estimate = rec.seed;
        rec.root = r.mu;
        rec.residual = r.residual;
        rec.method = RootMethod::SmallRootScan;
        rec.iterations = r.iterations;
        rec.multiplicity = r.multiplicity;
        rec.converged = r.residual <= residual_tolerance(std::abs(r.mu));
        if (r.multiplicity > 1) rec.note = "degenerate root of multiplicity " + std::to_string(r.multiplicity);
        return rec;
    };

    // Labels for the core, filled from the low end of {-1, -0, +0, +1} when fewer than four exist.
    const SpectralIndex labels[4] = {SpectralIndex::neg(1), SpectralIndex::neg(0), SpectralIndex::pos(0),
                                     SpectralIndex::pos(1)};
    for (std::size_t i = 0; i < core.size(); ++i) out.records.push_back(make(expanded[core[i]], labels[i]));

    std::vector<std::size_t> neg, pos;
    for (std::size_t i : rest) (expanded[i].mu < 0 ? neg : pos).push_back(i);
    std::stable_sort(neg.begin(), neg.end(), [&](std::size_t a, std::size_t b) { return expanded[a].mu > expanded[b].mu; });
    std::stable_sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) { return expanded[a].mu < expanded[b].mu; });
    for (std::size_t i = 0; i < neg.size(); ++i) {
        out.records.push_back(make(expanded[neg[i]], SpectralIndex::neg(static_cast<int>(i) + 2)));
    }
    for (std::size_t i = 0; i < pos.size(); ++i) {
        out.records.push_back(make(expanded[pos[i]], SpectralIndex::pos(static_cast<int>(i) + 2)));
    }
    return out;
}

double verify_simplicity(const ProblemSpec& spec, const EigenvalueRecord& rec, const SolverControl& control) {
    if (!rec.is_real()) {
        const cplx z = rec.root;
        const double h = 1e-6 * (1.0 + std::abs(z));
        return std::abs(xi<cplx>(spec, z + h, control) - xi<cplx>(spec, z - h, control)) / (2.0 * h);
    }
    const double mu = rec.mu();
    const double h = 1e-6 * (1.0 + std::abs(mu));
    return std::abs(xi<double>(spec, mu + h, control) - xi<double>(spec, mu - h, control)) / (2.0 * h);
}

SpectrumSweep sweep_spectrum(const ProblemSpec& spec, int n_min, int n_max, const SolverControl& control,
                             int jobs) {
    SpectrumSweep out;
    n_min = std::max(0, n_min);
    if (n_max < n_min) return out;

    if (n_min <= 1) {
        const auto scan = scan_small_roots(spec, control, 2.5, jobs);
        for (const auto& d : scan.diagnostics) out.diagnostics.push_back("small_roots: " + d);
        for (const auto& rec : scan.records) {
            if (rec.index.magnitude >= n_min && rec.index.magnitude <= std::min(1, n_max)) {
                out.records.push_back(rec);
            }
        }
    }

    std::vector<SpectralIndex> rest;
    for (int k = std::max(2, n_min); k <= n_max; ++k) {
        rest.push_back(SpectralIndex::neg(k));
        rest.push_back(SpectralIndex::pos(k));
    }
    auto found = parallel_map(rest, jobs, [&](SpectralIndex idx) { return find_eigenvalue(spec, idx, control); });
    for (auto& r : found) out.records.push_back(std::move(r));

    std::stable_sort(out.records.begin(), out.records.end(),
                     [](const EigenvalueRecord& a, const EigenvalueRecord& b) { return a.index < b.index; });

    // The estimate can sit between two true roots, so the nearest sign change may be the
    // previous index's root again. Re-bracket strictly beyond it, below the next root,
    // when the estimate itself lies beyond the previous root.
    const std::function<double(double)> f = [&](double mu) { return xi<double>(spec, mu, control); };
    for (int side : {-1, 1}) {
        std::vector<EigenvalueRecord*> chain;
        for (int k = 0;; ++k) {
            const auto idx = side > 0 ? SpectralIndex::pos(k) : SpectralIndex::neg(k);
            auto it = std::find_if(out.records.begin(), out.records.end(),
                                   [&](const EigenvalueRecord& r) { return r.index == idx; });
            if (it == out.records.end()) {
                if (k <= 1) continue;
                break;
            }
            chain.push_back(&*it);
        }
        for (std::size_t i = 1; i < chain.size(); ++i) {
            auto& cur = *chain[i];
            const auto& prev = *chain[i - 1];
            if (cur.index.magnitude < 2 || !cur.is_real() || !prev.is_real()) continue;
            const double lo = side * prev.mu();
            const double gap = 1e-8 * (1.0 + std::abs(lo));
            // an estimate that is itself behind the previous root gives no usable ordering
            if (side * cur.mu() > lo + gap || side * cur.estimate <= lo) continue;
            double hi = lo + 1.5;
            if (i + 1 < chain.size() && chain[i + 1]->is_real() && side * chain[i + 1]->mu() > lo + gap) {
                hi = std::min(hi, side * chain[i + 1]->mu());
            }
            const auto g = [&](double x) { return f(side * x); };
            double x0 = lo + 10.0 * gap + kScanStep;
            double g0 = g(x0);
            bool fixed = false;
            for (double x1 = x0 + kScanStep; x1 < hi - 10.0 * gap; x1 += kScanStep) {
                const double g1 = g(x1);
                if (g1 == 0.0 || (g0 > 0) != (g1 > 0)) {
                    const auto br = refine_bracket(g, x0, x1, g0, g1);
                    cur.root = side * br.x;
                    cur.residual = std::abs(br.fx);
                    cur.iterations += br.iterations;
                    cur.method = RootMethod::Bisection;
                    cur.converged = cur.residual <= residual_tolerance(std::abs(br.x));
                    if (!cur.note.empty()) cur.note += "; ";
                    cur.note += "re-bracketed between neighbours after duplicate";
                    out.diagnostics.push_back("rebracketed " + cur.index.str());
                    fixed = true;
                    break;
                }
                x0 = x1;
                g0 = g1;
            }
            if (!fixed) out.diagnostics.push_back("rebracket_failed " + cur.index.str());
        }
    }

    for (const auto& r : out.records) {
        if (!r.converged) out.diagnostics.push_back("non_converged " + r.index.str());
    }
    for (std::size_t i = 1; i < out.records.size(); ++i) {
        const auto& a = out.records[i - 1];
        const auto& b = out.records[i];
        if (!a.is_real() || !b.is_real() || a.multiplicity > 1 || b.multiplicity > 1) continue;
        if (std::abs(a.mu() - b.mu()) <= 1e-8 * (1.0 + std::abs(a.mu()))) {
            out.diagnostics.push_back("duplicate_root " + a.index.str() + " " + b.index.str());
        } else if (b.mu() < a.mu()) {
            out.diagnostics.push_back("out_of_order " + a.index.str() + " " + b.index.str());
        }
    }
    return out;
}

} // namespace rsl
