#include "rsl/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rsl/error.hpp"

namespace rsl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRoundoff = 1e-12;

template <class S>
S hermite(double s, double h, S y0, S d0, S y1, S d1) {
    const double s2 = s * s;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s2 * (3 - 2 * s);
    const double h11 = s2 * (s - 1);
    return h00 * y0 + (h10 * h) * d0 + h01 * y1 + (h11 * h) * d1;
}

int segment_index(const std::vector<double>& theta, double t) {
    return static_cast<int>(std::upper_bound(theta.begin(), theta.end(), t) - theta.begin());
}

// Node interval k with t in [t_k, t_{k+1}], clamped to the stored range.
template <class S>
std::size_t interval_of(const SolutionSegment<S>& seg, double t) {
    const auto& ts = seg.t;
    if (ts.size() < 2) return 0;
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    std::size_t k = it == ts.begin() ? 0 : static_cast<std::size_t>(it - ts.begin()) - 1;
    return std::min(k, ts.size() - 2);
}

// y from stored nodes (possibly a segment still being built).
template <class S>
S stored_value(const std::vector<SolutionSegment<S>>& segs, const std::vector<double>& theta, double t) {
    const int si = std::min(segment_index(theta, t), static_cast<int>(segs.size()) - 1);
    const auto& seg = segs[static_cast<std::size_t>(si)];
    if (seg.t.size() == 1) return seg.y.front();
    const std::size_t k = interval_of(seg, t);
    const double h = seg.t[k + 1] - seg.t[k];
    const double s = (t - seg.t[k]) / h;
    if (s == 0.0) return seg.y[k];
    if (s == 1.0) return seg.y[k + 1];
    return hermite(s, h, seg.y[k], seg.yp[k], seg.y[k + 1], seg.yp[k + 1]);
}

double delayed_argument(double t, double d) {
    double tau = t - d;
    if (tau < 0.0) {
        if (tau < -kRoundoff) throw DomainError(t, "delay", "delayed argument t - Delta(t) is negative");
        tau = 0.0;
    }
    return std::min(tau, t);
}

template <class S>
class Shooter {
public:
    Shooter(const ProblemSpec& spec, S mu, const SolverControl& control, bool store)
        : spec_(spec),
          mu2_(mu * mu),
          ctl_(control),
          h_(control.step(std::abs(mu))),
          no_delay_(spec.delay_is_zero()),
          store_(store || !no_delay_) {
        initial_ = initial_state(spec, mu);
    }

    State<S> run() {
        State<S> st = initial_;
        const int m = spec_.m();
        for (int i = 0; i <= m; ++i) {
            if (i > 0) {
                const double d = spec_.delta[static_cast<std::size_t>(i - 1)];
                st.y /= d;
                st.yp /= d;
            }
            st = segment(i, st);
        }
        return st;
    }

    std::vector<SolutionSegment<S>> take_segments() { return std::move(segs_); }

private:
    S accel(double q, S y, S ydel) const { return -mu2_ * y - q * ydel; }

    S history(double tau) const { return stored_value(segs_, spec_.theta, tau); }

    State<S> segment(int i, State<S> st) {
        const double a = segment_start(spec_, i);
        const double b = segment_end(spec_, i);
        const int n = std::max(1, static_cast<int>(std::ceil((b - a) / h_ - 1e-9)));
        const double hs = (b - a) / n;

        if (store_) {
            segs_.emplace_back();
            auto& seg = segs_.back();
            const auto cap = static_cast<std::size_t>(n) + 1;
            seg.t.reserve(cap);
            seg.y.reserve(cap);
            seg.yp.reserve(cap);
            seg.ypp.reserve(cap);
            seg.t.push_back(a);
            seg.y.push_back(st.y);
            seg.yp.push_back(st.yp);
        }

        double t0 = a;
        const double q0 = spec_.q(a);
        S a0;
        if (no_delay_) {
            a0 = accel(q0, st.y, st.y);
        } else {
            const double tau = delayed_argument(a, spec_.delay(a));
            a0 = accel(q0, st.y, tau >= a ? st.y : history(tau));
        }
        if (store_) segs_.back().ypp.push_back(a0);

        for (int k = 0; k < n; ++k) {
            const double t1 = k + 1 == n ? b : a + (k + 1) * hs;
            const double h = t1 - t0;
            const double th = t0 + 0.5 * h;
            const double qm = spec_.q(th);
            const double q1 = spec_.q(t1);

            S y1, p1, a1;
            if (no_delay_) {
                const S k1y = st.yp, k1p = a0;
                const S y2 = st.y + 0.5 * h * k1y, p2 = st.yp + 0.5 * h * k1p;
                const S k2y = p2, k2p = accel(qm, y2, y2);
                const S y3 = st.y + 0.5 * h * k2y, p3 = st.yp + 0.5 * h * k2p;
                const S k3y = p3, k3p = accel(qm, y3, y3);
                const S y4 = st.y + h * k3y, p4 = st.yp + h * k3p;
                const S k4y = p4, k4p = accel(q1, y4, y4);
                y1 = st.y + (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
                p1 = st.yp + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
                a1 = accel(q1, y1, y1);
            } else {
                const double tau_m = delayed_argument(th, spec_.delay(th));
                const double tau_1 = delayed_argument(t1, spec_.delay(t1));
                const bool inside = tau_m > t0 || tau_1 > t0;

                auto rk4 = [&](S ydm, S yd1) {
                    const S k1y = st.yp, k1p = a0;
                    const S y2 = st.y + 0.5 * h * k1y, p2 = st.yp + 0.5 * h * k1p;
                    const S k2y = p2, k2p = accel(qm, y2, ydm);
                    const S y3 = st.y + 0.5 * h * k2y, p3 = st.yp + 0.5 * h * k2p;
                    const S k3y = p3, k3p = accel(qm, y3, ydm);
                    const S y4 = st.y + h * k3y, p4 = st.yp + h * k3p;
                    const S k4y = p4, k4p = accel(q1, y4, yd1);
                    y1 = st.y + (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
                    p1 = st.yp + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
                };

                if (!inside) {
                    const S yd1 = history(tau_1);
                    rk4(history(tau_m), yd1);
                    a1 = accel(q1, y1, yd1);
                } else {
                    // Provisional local interpolant: Taylor predictor, then Hermite on the latest step.
                    const S y0 = st.y, v0 = st.yp;
                    auto local = [&](double tau, bool taylor) -> S {
                        if (tau <= t0) return history(tau);
                        const double s = tau - t0;
                        if (taylor) return y0 + s * v0 + (0.5 * s * s) * a0;
                        if (tau >= t1) return y1;
                        return hermite(s / h, h, y0, v0, y1, p1);
                    };
                    rk4(local(tau_m, true), local(tau_1, true));
                    for (int it = 1; it < ctl_.max_step_iterations; ++it) {
                        const S prev_y = y1, prev_p = p1;
                        rk4(local(tau_m, false), local(tau_1, false));
                        const double change = std::abs(y1 - prev_y) + std::abs(p1 - prev_p);
                        if (change <= ctl_.tol_step * (1.0 + std::abs(y1) + std::abs(p1))) break;
                    }
                    a1 = accel(q1, y1, local(tau_1, false));
                }
            }

            st = {y1, p1};
            a0 = a1;
            t0 = t1;
            if (store_) {
                auto& seg = segs_.back();
                seg.t.push_back(t1);
                seg.y.push_back(y1);
                seg.yp.push_back(p1);
                seg.ypp.push_back(a1);
            }
        }
        return st;
    }

    const ProblemSpec& spec_;
    S mu2_;
    const SolverControl& ctl_;
    double h_;
    bool no_delay_;
    bool store_;
    State<S> initial_;
    std::vector<SolutionSegment<S>> segs_;
};

} // namespace

void SolverControl::check() const {
    if (!(h_max > 0.0)) throw std::invalid_argument("solver h_max must be positive");
    if (!(c_osc >= 1.0)) throw std::invalid_argument("solver c_osc must be at least 1");
    if (!(tol_step > 0.0)) throw std::invalid_argument("solver tol_step must be positive");
    if (max_step_iterations < 1) throw std::invalid_argument("solver max_step_iterations must be >= 1");
}

double SolverControl::step(double abs_mu) const {
    return std::min(h_max, c_osc * kPi / (1.0 + abs_mu) * h_max);
}

template <class S>
PiecewiseSolution<S>::PiecewiseSolution(std::vector<double> theta, std::vector<double> delta,
                                        std::vector<SolutionSegment<S>> segments)
    : theta_(std::move(theta)), delta_(std::move(delta)), segments_(std::move(segments)) {}

template <class S>
std::pair<int, std::size_t> PiecewiseSolution<S>::locate(double t) const {
    if (!(t >= 0.0 && t <= kPi)) throw std::out_of_range("solution evaluated outside [0, pi]");
    const int si = segment_index(theta_, t);
    return {si, interval_of(segments_[static_cast<std::size_t>(si)], t)};
}

template <class S>
State<S> PiecewiseSolution<S>::operator()(double t) const {
    const auto [si, k] = locate(t);
    const auto& seg = segments_[static_cast<std::size_t>(si)];
    const double h = seg.t[k + 1] - seg.t[k];
    const double s = (t - seg.t[k]) / h;
    if (s == 0.0) return {seg.y[k], seg.yp[k]};
    if (s == 1.0) return {seg.y[k + 1], seg.yp[k + 1]};
    return {hermite(s, h, seg.y[k], seg.yp[k], seg.y[k + 1], seg.yp[k + 1]),
            hermite(s, h, seg.yp[k], seg.ypp[k], seg.yp[k + 1], seg.ypp[k + 1])};
}

template <class S>
S PiecewiseSolution<S>::value(double t) const {
    if (!(t >= 0.0 && t <= kPi)) throw std::out_of_range("solution evaluated outside [0, pi]");
    return stored_value(segments_, theta_, t);
}

template <class S>
State<S> PiecewiseSolution<S>::left_limit(int i) const {
    if (i < 1 || i > static_cast<int>(theta_.size())) throw std::out_of_range("left_limit: no such theta");
    const auto& seg = segments_[static_cast<std::size_t>(i - 1)];
    return {seg.y.back(), seg.yp.back()};
}

template <class S>
State<S> PiecewiseSolution<S>::at_pi() const {
    const auto& seg = segments_.back();
    return {seg.y.back(), seg.yp.back()};
}

template <class S>
std::size_t PiecewiseSolution<S>::node_count() const noexcept {
    std::size_t n = 0;
    for (const auto& s : segments_) n += s.t.size();
    return n;
}

template <class S>
PiecewiseSolution<S> shoot(const ProblemSpec& spec, S mu, const SolverControl& control) {
    control.check();
    Shooter<S> sh(spec, mu, control, true);
    sh.run();
    return PiecewiseSolution<S>(spec.theta, spec.delta, sh.take_segments());
}

template <class S>
State<S> shoot_endpoint(const ProblemSpec& spec, S mu, const SolverControl& control) {
    control.check();
    Shooter<S> sh(spec, mu, control, false);
    return sh.run();
}

template <class S>
PiecewiseSolution<S> picard_solve(const ProblemSpec& spec, S mu, int iterations, int nodes_per_segment) {
    if (mu == S{}) throw std::invalid_argument("picard_solve: mu must be nonzero");
    if (iterations < 1) throw std::invalid_argument("picard_solve: iterations must be >= 1");
    if (nodes_per_segment < 2) throw std::invalid_argument("picard_solve: need at least 2 nodes per segment");

    const int m = spec.m();
    const auto n = static_cast<std::size_t>(nodes_per_segment);
    std::vector<SolutionSegment<S>> segs;
    State<S> start = initial_state(spec, mu);

    for (int i = 0; i <= m; ++i) {
        const double a = segment_start(spec, i);
        const double b = segment_end(spec, i);
        if (i > 0) {
            const double d = spec.delta[static_cast<std::size_t>(i - 1)];
            start = {segs.back().y.back() / d, segs.back().yp.back() / d};
        }

        SolutionSegment<S> cur;
        cur.t.resize(n + 1);
        std::vector<double> qv(n + 1), tau(n + 1);
        std::vector<S> cs(n + 1), sn(n + 1), free_y(n + 1), free_p(n + 1);
        for (std::size_t j = 0; j <= n; ++j) {
            const double t = j == n ? b : a + (b - a) * static_cast<double>(j) / static_cast<double>(n);
            cur.t[j] = t;
            qv[j] = spec.q(t);
            tau[j] = delayed_argument(t, spec.delay(t));
            cs[j] = std::cos(mu * (t - a));
            sn[j] = std::sin(mu * (t - a));
            free_y[j] = start.y * cs[j] + start.yp / mu * sn[j];
            free_p[j] = -mu * start.y * sn[j] + start.yp * cs[j];
        }
        cur.y = free_y;
        cur.yp = free_p;

        // Delayed values from earlier segments stay fixed through the iteration.
        std::vector<char> in_current(n + 1);
        std::vector<S> fixed(n + 1);
        for (std::size_t j = 0; j <= n; ++j) {
            in_current[j] = tau[j] >= a ? 1 : 0;
            if (!in_current[j]) fixed[j] = stored_value(segs, spec.theta, tau[j]);
        }

        std::vector<SolutionSegment<S>> probe(1);
        auto delayed = [&](std::size_t j) -> S {
            if (!in_current[j]) return fixed[j];
            return stored_value(probe, {}, tau[j]);
        };

        std::vector<S> g(n + 1);
        for (int k = 0; k < iterations; ++k) {
            probe[0] = cur;
            for (std::size_t j = 0; j <= n; ++j) g[j] = qv[j] * delayed(j);
            S c_sum{}, s_sum{};
            for (std::size_t j = 0; j <= n; ++j) {
                if (j > 0) {
                    const double h = cur.t[j] - cur.t[j - 1];
                    c_sum += 0.5 * h * (g[j - 1] * cs[j - 1] + g[j] * cs[j]);
                    s_sum += 0.5 * h * (g[j - 1] * sn[j - 1] + g[j] * sn[j]);
                }
                cur.y[j] = free_y[j] - (sn[j] * c_sum - cs[j] * s_sum) / mu;
                cur.yp[j] = free_p[j] - (cs[j] * c_sum + sn[j] * s_sum);
            }
        }

        probe[0] = cur;
        cur.ypp.resize(n + 1);
        for (std::size_t j = 0; j <= n; ++j) cur.ypp[j] = -mu * mu * cur.y[j] - qv[j] * delayed(j);
        segs.push_back(std::move(cur));
    }
    return PiecewiseSolution<S>(spec.theta, spec.delta, std::move(segs));
}

template class PiecewiseSolution<double>;
template class PiecewiseSolution<cplx>;
template PiecewiseSolution<double> shoot(const ProblemSpec&, double, const SolverControl&);
template PiecewiseSolution<cplx> shoot(const ProblemSpec&, cplx, const SolverControl&);
template State<double> shoot_endpoint(const ProblemSpec&, double, const SolverControl&);
template State<cplx> shoot_endpoint(const ProblemSpec&, cplx, const SolverControl&);
template PiecewiseSolution<double> picard_solve(const ProblemSpec&, double, int, int);
template PiecewiseSolution<cplx> picard_solve(const ProblemSpec&, cplx, int, int);

} // namespace rsl
