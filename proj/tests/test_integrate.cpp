#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "rsl/catalog.hpp"
#include "rsl/error.hpp"
#include "rsl/integrate.hpp"

using namespace rsl;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
double sup_diff(F f, int n = 1000) {
    double m = 0.0;
    for (int i = 0; i <= n; ++i) m = std::max(m, f(kPi * i / n));
    return m;
}

} // namespace

TEST_CASE("T0 closed form") {
    const auto sol = shoot(testing::t0(), 3.0);
    const auto end = sol.at_pi();
    CHECK(end.y == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(std::abs(end.yp) <= 1e-8);
    CHECK(sol.value(kPi / 3) == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(sup_diff([&](double t) { return std::abs(sol.value(t) - 3.0 * std::cos(3.0 * t)); }) <= 1e-8);
    const auto st = eval_solution(sol, kPi / 3);
    CHECK(st.yp == doctest::Approx(-9.0 * std::sin(kPi)).epsilon(1e-6));
}

TEST_CASE("T1 closed form") {
    const double mu = std::sqrt(3.0);
    const auto sol = shoot(testing::t1(), mu);
    CHECK(sol.at_pi().y == doctest::Approx(1.7320508076).epsilon(1e-10));
    CHECK(sup_diff([&](double t) { return std::abs(sol.value(t) - mu * std::cos(2.0 * t)); }) <= 1e-8);
}

TEST_CASE("endpoint shortcut matches dense solution") {
    for (const auto& spec : {catalog::example1(), catalog::example2(), testing::t1()}) {
        const auto dense = shoot(spec, 7.5).at_pi();
        const auto fast = shoot_endpoint(spec, 7.5);
        CHECK(fast.y == doctest::Approx(dense.y).epsilon(1e-13));
        CHECK(fast.yp == doctest::Approx(dense.yp).epsilon(1e-13));
    }
}

TEST_CASE("initial state") {
    const auto s = catalog::example2();
    const auto st = initial_state(s, 2.0);
    CHECK(st.y == 2.0 * 7.0 + 4.0);
    CHECK(st.yp == 2.0 * 3.0 + 2.0);
    const auto sol = shoot(s, 2.0);
    CHECK(sol(0.0).y == st.y);
    CHECK(sol(0.0).yp == st.yp);
}

TEST_CASE("jumps are exact at interior points") {
    const auto s = catalog::example2();
    const auto sol = shoot(s, 10.0);
    for (int i = 1; i <= s.m(); ++i) {
        const double th = s.theta[static_cast<std::size_t>(i - 1)];
        const double d = s.delta[static_cast<std::size_t>(i - 1)];
        const auto left = sol.left_limit(i);
        const auto right = sol(th);
        CHECK(std::abs(right.y * d - left.y) <= 1e-14 * (1.0 + std::abs(left.y)));
        CHECK(std::abs(right.yp * d - left.yp) <= 1e-14 * (1.0 + std::abs(left.yp)));
        CHECK(right.y == left.y / d);
    }
}

TEST_CASE("dense output reproduces nodes") {
    const auto sol = shoot(catalog::example1(), 4.0);
    for (const auto& seg : sol.segments()) {
        for (std::size_t k = 0; k < seg.t.size(); k += 97) {
            const double t = seg.t[k];
            if (t == seg.t.front() && &seg != &sol.segments().front()) continue;
            const auto st = sol(t);
            CHECK(st.y == seg.y[k]);
            CHECK(st.yp == seg.yp[k]);
        }
    }
    CHECK(sol.node_count() > 100);
    CHECK_THROWS(sol(3.5));
}

TEST_CASE("step-halving convergence is fourth order") {
    for (int which = 0; which < 2; ++which) {
        const auto spec = which == 0 ? testing::t0() : testing::t1();
        for (double mu : {1.0, 5.0, 20.0}) {
            CAPTURE(which);
            CAPTURE(mu);
            const double w = which == 0 ? mu : std::sqrt(mu * mu + 1.0);
            const double ye = mu * std::cos(w * kPi);
            const double ype = -mu * w * std::sin(w * kPi);
            auto err = [&](double h) {
                SolverControl c;
                c.h_max = h;
                c.c_osc = 1e6;
                const auto st = shoot_endpoint(spec, mu, c);
                return std::hypot(st.y - ye, (st.yp - ype) / w);
            };
            const double h = kPi / (20.0 * (1.0 + mu));
            const double ratio = err(h) / err(h / 2);
            CHECK(ratio >= 12.0);
            CHECK(ratio <= 20.0);
        }
    }
}

TEST_CASE("Picard oracle") {
    SUBCASE("T0 is exact after one iteration") {
        const auto p = picard_solve(testing::t0(), 3.0, 1, 2000);
        CHECK(sup_diff([&](double t) { return std::abs(p.value(t) - 3.0 * std::cos(3.0 * t)); }) <= 1e-8);
    }
    SUBCASE("T1 at K = 10") {
        const double mu = std::sqrt(3.0);
        const auto p = picard_solve(testing::t1(), mu, 10, 4000);
        CHECK(sup_diff([&](double t) { return std::abs(p.value(t) - mu * std::cos(2.0 * t)); }) <= 1e-5);
    }
    SUBCASE("Example 1 at mu = 5 agrees with shooting") {
        const auto s = catalog::example1();
        const auto a = shoot(s, 5.0);
        const auto b = picard_solve(s, 5.0, 8, 4000);
        CHECK(sup_diff([&](double t) { return std::abs(a.value(t) - b.value(t)); }) <= 1e-6);
        CHECK(std::abs(a.at_pi().y - b.at_pi().y) <= 1e-6);
    }
    SUBCASE("Example 2 at mu = 10 agrees with shooting") {
        const auto s = catalog::example2();
        const auto a = shoot(s, 10.0);
        const auto b = picard_solve(s, 10.0, 8, 4000);
        CHECK(sup_diff([&](double t) { return std::abs(a.value(t) - b.value(t)); }) <= 1e-5);
    }
    SUBCASE("argument checks") {
        CHECK_THROWS_AS(picard_solve(testing::t0(), 0.0, 3, 100), std::invalid_argument);
        CHECK_THROWS_AS(picard_solve(testing::t0(), 1.0, 0, 100), std::invalid_argument);
    }
}

TEST_CASE("linearity in initial data on T1") {
    // (y0, y0') -> (y(pi), y'(pi)) is linear for fixed mu: superpose two
    // initial states set through the mu-free boundary coefficients.
    const double mu = 2.3;
    auto with_initial = [&](double y0, double yp0) {
        auto s = testing::t1();
        s.alpha = {.c1_minus = yp0, .c1_plus = 0.0, .c2_minus = y0, .c2_plus = 0.0};
        return shoot_endpoint(s, mu);
    };
    const auto a = with_initial(1.0, 0.0);
    const auto b = with_initial(0.0, 1.0);
    const auto c = with_initial(2.0, -3.0);
    CHECK(c.y == doctest::Approx(2.0 * a.y - 3.0 * b.y).epsilon(1e-12));
    CHECK(c.yp == doctest::Approx(2.0 * a.yp - 3.0 * b.yp).epsilon(1e-12));
}

TEST_CASE("complex mode agrees for real mu") {
    for (const auto& spec : {catalog::example1(), catalog::example2()}) {
        const auto r = shoot(spec, 6.0);
        const auto c = shoot(spec, cplx(6.0, 0.0));
        double max_im = 0.0, max_re = 0.0;
        for (const auto& seg : c.segments()) {
            for (std::size_t k = 0; k < seg.y.size(); ++k) {
                max_im = std::max({max_im, std::abs(seg.y[k].imag()), std::abs(seg.yp[k].imag())});
            }
        }
        CHECK(max_im <= 1e-12);
        for (int i = 0; i <= 200; ++i) {
            const double t = kPi * i / 200;
            max_re = std::max(max_re, std::abs(c.value(t).real() - r.value(t)));
        }
        CHECK(max_re <= 1e-10);
    }
}

TEST_CASE("complex frequency on T0") {
    const cplx mu(2.0, 0.5);
    const auto end = shoot_endpoint(testing::t0(), mu);
    const cplx exact = mu * std::cos(mu * kPi);
    CHECK(std::abs(end.y - exact) <= 1e-8 * std::abs(exact));
}

TEST_CASE("solver control checks") {
    SolverControl c;
    CHECK_NOTHROW(c.check());
    c.c_osc = 0.5;
    CHECK_THROWS_AS(c.check(), std::invalid_argument);
    c = {};
    c.h_max = 0.0;
    CHECK_THROWS_AS(c.check(), std::invalid_argument);
    c = {};
    c.tol_step = -1.0;
    CHECK_THROWS_AS(c.check(), std::invalid_argument);
    c = {};
    CHECK(c.step(0.0) == c.h_max);
    CHECK(c.step(100.0) < c.h_max);
}

TEST_CASE("bad delayed argument surfaces as a domain error") {
    auto s = testing::t1();
    s.delay = ScalarFunction::parse("t+1");
    CHECK_THROWS_AS(shoot(s, 2.0), DomainError);
}
