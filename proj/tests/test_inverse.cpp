#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "rsl/asymptotics.hpp"
#include "rsl/catalog.hpp"
#include "rsl/inverse.hpp"

using namespace rsl;

namespace {

constexpr double kPi = std::numbers::pi;

NodalSet synthetic(int n, double shift) {
    NodalSet ns;
    ns.index = SpectralIndex::pos(n);
    ns.mu0 = n - 1;
    ns.mu = ns.mu0;
    for (int j = 1; j <= n - 1; ++j) ns.nodes.push_back((j - 0.5) * kPi / ns.mu0 + shift / (ns.mu0 * ns.mu0));
    return ns;
}

NodalSet nodes_of(const ProblemSpec& s, int n) {
    return find_nodes(s, find_eigenvalue(s, SpectralIndex::pos(n)));
}

double interior_sup(const ReconstructionResult& r, const std::function<double(double)>& q, double lo, double hi) {
    double m = 0.0;
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        const double t = r.grid[i];
        if (t < lo || t > hi) continue;
        m = std::max(m, std::abs(r.q_hat[i] - q(t)));
    }
    return m;
}

} // namespace

TEST_CASE("uniform grid") {
    const auto g = uniform_grid(4);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == kPi);
    CHECK(g[2] == doctest::Approx(kPi / 2));
}

TEST_CASE("branch selection") {
    CHECK(limit_branch(catalog::example2()) == LimitBranch::DelayZero);
    CHECK(limit_branch(catalog::example1()) == LimitBranch::DelayNonzero);
    auto s = catalog::example1();
    s.delay = ScalarFunction::parse("abs(t-1.5)+t-1.5");  // zero on [0, 1.5]
    CHECK_THROWS_AS(limit_branch(s), std::invalid_argument);
    CHECK_THROWS_AS(limit_function_exact(s, 1.0), std::invalid_argument);
    CHECK(branch_name(LimitBranch::DelayZero) == "delta_zero");
    CHECK(branch_name(LimitBranch::DelayNonzero) == "delta_nonzero");
}

TEST_CASE("closed-form limit function") {
    const auto e2 = catalog::example2();
    CHECK(limit_function_exact(e2, 0.0) == doctest::Approx(-3.0 / 7.0).epsilon(1e-12));
    CHECK(limit_function_exact(e2, kPi) == doctest::Approx(1.0).epsilon(1e-9));
    const auto e1 = catalog::example1();
    for (double t : {0.0, 0.7, 2.0, kPi}) CHECK(limit_function_exact(e1, t) == 0.0);
    CHECK(limit_function_exact(testing::t0(), 1.3) == 0.0);
    // f(pi) - f(0) = B on the zero-delay branch
    const auto flat = testing::example1_flat();
    CHECK(limit_function_exact(flat, kPi) - limit_function_exact(flat, 0.0) == doctest::Approx(flat.b_const()));
}

TEST_CASE("T0 nodal data gives a zero limit function") {
    SolverControl fine;
    fine.c_osc = 1.0;
    EigenvalueRecord r;
    r.index = SpectralIndex::pos(40);
    r.root = 39.0;
    r.converged = true;
    const auto ns = find_nodes(testing::t0(), r, fine);
    const auto est = estimate_limit_function({ns}, uniform_grid(100), LimitBranch::DelayZero);
    CHECK(est.source_n == 40);
    CHECK(est.secondary_n == 0);
    for (double v : est.f_hat) CHECK(std::abs(v) <= 1e-5);
}

TEST_CASE("estimate picks the largest index and flags gaps") {
    const auto a = synthetic(20, 0.3);
    const auto b = synthetic(40, 0.5);
    const auto est = estimate_limit_function({a, b}, {0.0, 1.0, kPi}, LimitBranch::DelayZero);
    CHECK(est.source_n == 40);
    for (double v : est.f_hat) CHECK(v == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(est.gap[0] == 0);
    CHECK(est.gap[2] == 1);
    CHECK(est.node_t[2] == b.nodes.back());
}

TEST_CASE("Richardson combination") {
    const auto a = synthetic(20, 0.3);
    const auto b = synthetic(40, 0.5);
    const auto est = estimate_limit_function({b, a}, {1.0}, LimitBranch::DelayZero, true);
    CHECK(est.secondary_n == 20);
    const double expect = (39.0 * 0.5 - 19.0 * 0.3) / (39.0 - 19.0);
    CHECK(est.f_hat[0] == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("estimate argument checks") {
    CHECK_THROWS_AS(estimate_limit_function({}, {1.0}, LimitBranch::DelayZero), std::invalid_argument);
    NodalSet empty;
    empty.index = SpectralIndex::pos(10);
    CHECK_THROWS_AS(estimate_limit_function({empty}, {1.0}, LimitBranch::DelayZero), std::invalid_argument);
}

TEST_CASE("identity closure for exact limit functions") {
    const auto grid = uniform_grid(20000);
    for (const auto& s : {catalog::example2(), testing::example1_flat()}) {
        const double u0 = oscillatory_integrals(s, 0.0).u_plus;
        const auto f = sample_limit_function([&](double t) { return limit_function_exact(s, t); }, grid,
                                             LimitBranch::DelayZero);
        const auto r = reconstruct_potential(f, u0);
        CHECK(interior_sup(r, [&](double t) { return s.q(t); }, 1e-9, kPi - 1e-9) <= 1e-6);
        CHECK(r.f_pi - r.f_zero == doctest::Approx(s.b_const()).epsilon(1e-9));
        CHECK(r.stencil == 5);
    }
    CHECK(oscillatory_integrals(catalog::example2(), 0.0).u_plus ==
          doctest::Approx((std::exp(kPi) - 1.0) / 2.0).epsilon(1e-12));
    CHECK(oscillatory_integrals(testing::example1_flat(), 0.0).u_plus == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-12));
}

TEST_CASE("reconstruction argument checks") {
    const auto grid = uniform_grid(10);
    const auto f = sample_limit_function([](double t) { return t; }, grid, LimitBranch::DelayNonzero);
    CHECK_THROWS_AS(reconstruct_potential(f, 1.0), std::invalid_argument);
    const auto g = sample_limit_function([](double t) { return t; }, grid, LimitBranch::DelayZero);
    CHECK_THROWS_AS(reconstruct_potential(g, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct_potential(g, 1.0, 12), std::invalid_argument);
    // linear f: f' = 1 everywhere, q = (2/pi)(u0 + pi) - 2
    const auto r = reconstruct_potential(g, 1.0, 3);
    for (double q : r.q_hat) CHECK(q == doctest::Approx(2.0 / kPi * (1.0 + kPi) - 2.0).epsilon(1e-12));
}

TEST_CASE("Example 2 limit function from nodes at n = 200") {
    const auto s = catalog::example2();
    const auto est = estimate_limit_function({nodes_of(s, 200)}, uniform_grid(200), LimitBranch::DelayZero);
    double fmax = 0.0, err = 0.0;
    for (std::size_t i = 1; i + 1 < est.grid.size(); ++i) {
        const double fe = limit_function_exact(s, est.grid[i]);
        fmax = std::max(fmax, std::abs(fe));
        err = std::max(err, std::abs(est.f_hat[i] - fe));
    }
    CHECK(err <= 0.05 * (1.0 + fmax));
}

TEST_CASE("nodal round trip for exp(t) at n = 200") {
    const auto s = catalog::example2();
    const auto est = estimate_limit_function({nodes_of(s, 200)}, uniform_grid(200), LimitBranch::DelayZero);
    const auto r = reconstruct_potential(est, oscillatory_integrals(s, 0.0).u_plus);
    double rel = 0.0;
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        const double t = r.grid[i];
        if (t < 0.1 * kPi || t > 0.9 * kPi) continue;
        rel = std::max(rel, std::abs(r.q_hat[i] - std::exp(t)) / std::exp(t));
    }
    CHECK(rel <= 0.05);
}

TEST_CASE("nonzero delay leaves a flat limit function") {
    const auto s = catalog::example1();
    const auto grid = uniform_grid(100);
    auto sup = [&](int n) {
        const auto est = estimate_limit_function({nodes_of(s, n)}, grid, LimitBranch::DelayNonzero);
        double m = 0.0;
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) m = std::max(m, std::abs(est.f_hat[i]));
        return m;
    };
    CHECK(sup(200) < sup(100));
}
