#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "rsl/asymptotics.hpp"
#include "rsl/catalog.hpp"
#include "rsl/index.hpp"
#include "rsl/spectrum.hpp"

using namespace rsl;

namespace {

constexpr double kPi = std::numbers::pi;

// Xi from the successive-approximation solver, used as an independent oracle.
double xi_picard(const ProblemSpec& s, double mu) {
    const auto end = picard_solve(s, mu, 12, 6000).at_pi();
    return (mu * s.beta.c1_plus + s.beta.c1_minus) * end.y - (mu * s.beta.c2_plus + s.beta.c2_minus) * end.yp;
}

} // namespace

TEST_CASE("characteristic function closed forms") {
    const auto t0 = testing::t0();
    CHECK(xi(t0, 0.5) == doctest::Approx(0.125).epsilon(1e-10));
    CHECK(std::abs(xi(t0, 1.0)) <= 1e-10);
    CHECK(xi0(t0, 0.5) == doctest::Approx(0.125).epsilon(1e-15));
    const auto e2 = catalog::example2();
    CHECK(std::abs(xi0(e2, 1.0)) <= 1e-14);
    CHECK(xi0(e2, 0.5) == doctest::Approx(0.0546875).epsilon(1e-15));
    const cplx z(0.5, 0.0);
    CHECK(xi0(t0, z).real() == doctest::Approx(0.125));
}

TEST_CASE("xi equals xi0 on T0") {
    // c_osc = 1: the default step leaves ~3e-7 relative phase error near mu = 50
    const auto t0 = testing::t0();
    SolverControl fine;
    fine.c_osc = 1.0;
    for (double mu = 0.2; mu <= 50.0; mu += 0.77) {
        CAPTURE(mu);
        const double a = xi(t0, mu, fine);
        const double b = xi0(t0, mu);
        CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, mu * mu * mu));
    }
}

TEST_CASE("Example 2 xi against the Picard oracle") {
    const auto s = catalog::example2();
    const double a = xi(s, 10.0);
    const double b = xi_picard(s, 10.0);
    CHECK(std::abs(a - b) <= 1e-5 * std::abs(b));
}

TEST_CASE("complex xi for real argument is real") {
    const auto s = catalog::example1();
    const cplx v = xi(s, cplx(4.2, 0.0));
    CHECK(v.imag() == 0.0);
    CHECK(v.real() == doctest::Approx(xi(s, 4.2)).epsilon(1e-12));
}

TEST_CASE("index seeds and ordering") {
    CHECK(mu_seed(SpectralIndex::pos(40)) == 39.0);
    CHECK(mu_seed(SpectralIndex::neg(5)) == -4.0);
    CHECK(mu_seed(SpectralIndex::pos(0)) == 0.0);
    CHECK(mu_seed(SpectralIndex::neg(0)) == 0.0);
    CHECK(mu_seed(SpectralIndex::pos(1)) == 0.0);
    CHECK(mu_seed(SpectralIndex::neg(1)) == 0.0);
    CHECK(SpectralIndex::neg(0) != SpectralIndex::pos(0));
    CHECK(SpectralIndex::neg(1) < SpectralIndex::neg(0));
    CHECK(SpectralIndex::neg(0) < SpectralIndex::pos(0));
    CHECK(SpectralIndex::pos(0) < SpectralIndex::pos(1));
    CHECK(SpectralIndex::from_int(-3) == SpectralIndex::neg(3));
    CHECK(SpectralIndex::neg(0).str() == "-0");
    CHECK(SpectralIndex::pos(40).str() == "+40");
}

TEST_CASE("find_eigenvalue on closed-form instances") {
    // the default step leaves ~1e-6 phase error at mu = 39; c_osc = 1 is 8x finer
    SolverControl fine;
    fine.c_osc = 1.0;
    const auto t0r = find_eigenvalue(testing::t0(), SpectralIndex::pos(40), fine);
    CHECK(t0r.converged);
    CHECK(t0r.method == RootMethod::Bisection);
    CHECK(t0r.seed == 39.0);
    CHECK(t0r.estimate == 39.0);
    CHECK(std::abs(t0r.mu() - 39.0) <= 1e-9);
    CHECK(std::abs(find_eigenvalue(testing::t0(), SpectralIndex::pos(40)).mu() - 39.0) <= 1e-6);
    const auto t1r = find_eigenvalue(testing::t1(), SpectralIndex::pos(40), fine);
    CHECK(t1r.converged);
    CHECK(std::abs(t1r.mu() - std::sqrt(39.0 * 39.0 - 1.0)) <= 1e-7);
    CHECK(t1r.mu() == doctest::Approx(38.9871774).epsilon(1e-9));
    const auto neg = find_eigenvalue(testing::t0(), SpectralIndex::neg(7), fine);
    CHECK(std::abs(neg.mu() + 6.0) <= 1e-9);
}

TEST_CASE("find_eigenvalue on Example 2 at n = 40") {
    const auto s = catalog::example2();
    const auto r = find_eigenvalue(s, SpectralIndex::pos(40));
    REQUIRE(r.converged);
    CHECK(r.is_real());
    CHECK(r.estimate == doctest::Approx(38.8979716).epsilon(1e-9));
    CHECK(std::abs(r.mu() - r.estimate) <= 0.01);
    CHECK(r.residual <= residual_tolerance(std::abs(r.mu())));
    const double slope = verify_simplicity(s, r);
    CHECK(slope > 1e-6 * (1.0 + r.mu() * r.mu()));
}

TEST_CASE("complex secant takes over when no bracket changes sign") {
    // T1 at +2: estimate 0.5, and xi < 0 on (0, 1); brackets of half-width <= 0.4 see no sign change.
    // The secant then walks into the degenerate zero at the origin.
    const auto r = find_eigenvalue(testing::t1(), SpectralIndex::pos(2), {}, 0.1);
    CHECK(r.estimate == doctest::Approx(0.5));
    CHECK(r.method == RootMethod::ComplexSecant);
    REQUIRE(r.converged);
    CHECK(r.residual <= residual_tolerance(std::abs(r.root)));
    CHECK(std::abs(r.root) <= 1e-4);
    // the default radius reaches the sign change at 0 by bisection
    CHECK(find_eigenvalue(testing::t1(), SpectralIndex::pos(2)).method == RootMethod::Bisection);
}

TEST_CASE("seed correctness over 10 <= |n| <= 60") {
    for (const auto& s : {catalog::example1(), catalog::example2()}) {
        for (int n = 10; n <= 60; n += 5) {
            for (auto idx : {SpectralIndex::pos(n), SpectralIndex::neg(n)}) {
                CAPTURE(idx.str());
                const auto r = find_eigenvalue(s, idx);
                REQUIRE(r.converged);
                CHECK(std::abs(r.mu() - r.estimate) <= 2 * 0.25);
                CHECK(r.residual <= residual_tolerance(std::abs(r.mu())));
            }
        }
    }
}

TEST_CASE("simplicity check closed forms") {
    EigenvalueRecord r;
    r.index = SpectralIndex::pos(40);
    r.root = 39.0;
    r.converged = true;
    SolverControl fine;
    fine.c_osc = 1.0;
    CHECK(verify_simplicity(testing::t0(), r, fine) == doctest::Approx(186355.9).epsilon(1.0 / 186355.9));
    r.root = 1.0;
    CHECK(verify_simplicity(testing::t0(), r, fine) == doctest::Approx(kPi).epsilon(1e-6));
}

TEST_CASE("small-root scan") {
    SUBCASE("T0 degenerate cluster") {
        const auto scan = scan_small_roots(testing::t0());
        REQUIRE(scan.records.size() >= 4);
        for (int k = 0; k < 4; ++k) {
            const auto& r = scan.records[static_cast<std::size_t>(k)];
            CHECK(r.mu() == 0.0);
            CHECK(r.multiplicity == 4);
            CHECK(r.method == RootMethod::SmallRootScan);
            CHECK_FALSE(r.note.empty());
        }
        CHECK(scan.records[0].index == SpectralIndex::neg(1));
        CHECK(scan.records[3].index == SpectralIndex::pos(1));
    }
    SUBCASE("T1 degenerate zero and +-sqrt(3)") {
        const auto scan = scan_small_roots(testing::t1());
        std::vector<double> simple;
        int degenerate = 0;
        for (const auto& r : scan.records) {
            if (r.multiplicity > 1) {
                ++degenerate;
                CHECK(r.mu() == 0.0);
            } else {
                simple.push_back(r.mu());
            }
        }
        CHECK(degenerate == 4);
        std::sort(simple.begin(), simple.end());
        REQUIRE(simple.size() == 2);
        CHECK(simple[0] == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-9));
        CHECK(simple[1] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
    }
    SUBCASE("Example 2 has four real roots near the origin") {
        const auto scan = scan_small_roots(catalog::example2());
        // frozen from bisection on the Picard-oracle xi (14 iterations, 6000 nodes per segment)
        const double oracle[] = {-1.302430076805, -0.620146865375, 0.391783465938, 1.900388276335};
        const SpectralIndex idx[] = {SpectralIndex::neg(1), SpectralIndex::neg(0), SpectralIndex::pos(0),
                                     SpectralIndex::pos(1)};
        REQUIRE(scan.records.size() >= 4);
        for (int k = 0; k < 4; ++k) {
            const auto& r = scan.records[static_cast<std::size_t>(k)];
            CHECK(r.index == idx[k]);
            CHECK(std::abs(r.mu() - oracle[k]) <= 1e-6);
        }
        CHECK(scan.roots_with_multiplicity >= 4);
    }
    SUBCASE("Example 1 real roots in (-2.5, 2.5)") {
        // Xi stays positive on (-1.98, 1.06); only three real roots exist in the window.
        const auto scan = scan_small_roots(catalog::example1());
        const double oracle[] = {-1.979478234789, 1.060385964236, 2.198756769635};
        std::vector<double> found;
        for (const auto& r : scan.records) found.push_back(r.mu());
        std::sort(found.begin(), found.end());
        REQUIRE(found.size() == 3);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(found[static_cast<std::size_t>(k)] - oracle[k]) <= 1e-6);
        CHECK(scan.roots_with_multiplicity == 3);
        CHECK_FALSE(scan.diagnostics.empty());
    }
}

TEST_CASE("sweep is ordered and independent of worker count") {
    const auto s = catalog::example2();
    const auto a = sweep_spectrum(s, 0, 8, {}, 1);
    const auto b = sweep_spectrum(s, 0, 8, {}, 3);
    REQUIRE(a.records.size() == b.records.size());
    CHECK(a.records.size() == 18);
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].index == b.records[i].index);
        CHECK(a.records[i].root == b.records[i].root);
        if (i > 0) CHECK(a.records[i - 1].index < a.records[i].index);
    }
    CHECK(a.diagnostics == b.diagnostics);
}

TEST_CASE("sweep on T0 matches integers") {
    SolverControl fine;
    fine.c_osc = 1.0;
    const auto sw = sweep_spectrum(testing::t0(), 0, 12, fine);
    for (const auto& r : sw.records) {
        CAPTURE(r.index.str());
        CHECK(r.converged);
        CHECK(std::abs(r.mu() - mu_seed(r.index)) <= 1e-9);
    }
}

TEST_CASE("residual tolerance") {
    CHECK(residual_tolerance(0.0) == 1e-8);
    CHECK(residual_tolerance(10.0) == doctest::Approx(1e-8 * 1001.0));
    CHECK(method_name(RootMethod::Bisection) == "bisection");
    CHECK(method_name(RootMethod::ComplexSecant) == "complex-secant");
    CHECK(method_name(RootMethod::SmallRootScan) == "small-root-scan");
}
