#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "fixtures.hpp"
#include "rsl/catalog.hpp"
#include "rsl/problem.hpp"

using namespace rsl;

namespace {

bool has_rule(const std::vector<Finding>& fs, const std::string& rule) {
    return std::any_of(fs.begin(), fs.end(), [&](const Finding& f) { return f.rule == rule; });
}

} // namespace

TEST_CASE("catalog examples validate cleanly") {
    const auto r1 = validate(catalog::example1());
    CHECK(r1.pass);
    CHECK(r1.violations.empty());
    CHECK(r1.warnings.empty());
    const auto r2 = validate(catalog::example2());
    CHECK(r2.pass);
    CHECK(r2.violations.empty());
    CHECK(validate(testing::t0()).pass);
}

TEST_CASE("zero jump factor is a violation") {
    auto s = testing::t0();
    s.delta = {0.0};
    const auto r = validate(s);
    CHECK_FALSE(r.pass);
    CHECK(has_rule(r.violations, "delta_nonzero"));
}

TEST_CASE("delay 2t gives a negative delayed argument") {
    auto s = testing::t0();
    s.delay = ScalarFunction::parse("2*t");
    const auto r = validate(s);
    CHECK_FALSE(r.pass);
    bool all_positive = true;
    int count = 0;
    for (const auto& v : r.violations) {
        if (v.rule != "delayed_argument_negative") continue;
        ++count;
        all_positive = all_positive && v.t && *v.t > 0.0;
    }
    CHECK(count == kValidationGrid - 1);
    CHECK(all_positive);
}

TEST_CASE("structural violations") {
    auto s = testing::t0();
    s.delta = {1.0, 2.0};
    CHECK(has_rule(validate(s).violations, "delta_count"));

    s = testing::t0();
    s.theta = {4.0};
    CHECK(has_rule(validate(s).violations, "theta_range"));

    s = catalog::example2();
    s.theta = {2.0, 1.5};
    CHECK(has_rule(validate(s).violations, "theta_order"));

    s = testing::t0();
    s.alpha.c2_plus = 0.0;
    CHECK(has_rule(validate(s).violations, "leading_coefficients"));

    s = testing::t0();
    s.delay = ScalarFunction::parse("-1");
    CHECK(has_rule(validate(s).violations, "delay_nonnegative"));

    s = testing::t0();
    s.q = ScalarFunction::parse("log(t)");
    const auto rq = validate(s);
    CHECK(has_rule(rq.violations, "q_domain"));
    CHECK(rq.violations.front().t.value() == 0.0);

    s = testing::t0();
    s.delay = ScalarFunction::parse("sqrt(t-1)");
    CHECK(has_rule(validate(s).violations, "delay_domain"));
}

TEST_CASE("segment condition only warns") {
    auto s = catalog::example2();
    s.delay = ScalarFunction::parse("t/2");
    const auto r = validate(s);
    CHECK(r.pass);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings.front().rule == "delayed_argument_crosses_segment");
}

TEST_CASE("no interior points is allowed") {
    auto s = testing::t0();
    s.theta.clear();
    s.delta.clear();
    CHECK(validate(s).pass);
    CHECK(segment_of(s, 1.0) == 0);
    CHECK(segment_of(s, std::numbers::pi) == 0);
    CHECK(s.delta_product() == 1.0);
}

TEST_CASE("segment_of") {
    const auto s = catalog::example2();
    CHECK(segment_of(s, 1.7) == 1);
    CHECK(segment_of(s, 0.0) == 0);
    CHECK(segment_of(s, std::numbers::pi) == s.m());
    CHECK(segment_of(s, 1.5) == 1);
    CHECK(segment_of(s, 2.0) == 2);
    CHECK_THROWS_AS(segment_of(s, -0.1), std::out_of_range);
    CHECK_THROWS_AS(segment_of(s, 3.2), std::out_of_range);
    int prev = 0;
    for (int k = 0; k <= 1000; ++k) {
        const int seg = segment_of(s, std::numbers::pi * k / 1000);
        CHECK(seg >= prev);
        CHECK(seg <= s.m());
        prev = seg;
    }
    CHECK(prev == s.m());
    CHECK(segment_start(s, 0) == 0.0);
    CHECK(segment_end(s, 2) == std::numbers::pi);
    CHECK(segment_end(s, 0) == 1.5);
}

TEST_CASE("validate does not mutate") {
    const auto s = catalog::example1();
    const auto copy = s;
    (void)validate(s);
    CHECK(s.theta == copy.theta);
    CHECK(s.delta == copy.delta);
    CHECK(s.q(2.0) == copy.q(2.0));
}

TEST_CASE("derived constants") {
    const auto s = catalog::example2();
    CHECK(s.delta_product() == 16.0);
    CHECK(s.b_const() == doctest::Approx(1.0 + 3.0 / 7.0));
    CHECK(s.delay_is_zero());
    CHECK_FALSE(catalog::example1().delay_is_zero());
}
