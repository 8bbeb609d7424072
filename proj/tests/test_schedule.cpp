#include "doctest.h"

#include <cmath>

#include "srrw/errors.hpp"
#include "srrw/schedule.hpp"

using namespace srrw;

TEST_CASE("constant token parsing and labels") {
    AlphaSpec spec = parse_alpha_spec("1.5");
    CHECK(spec.kind == AlphaSpec::Kind::Constant);
    CHECK(spec.alpha == 1.5);
    CHECK(spec.label() == "1.5");
    CHECK(parse_alpha_spec("0").label() == "0");
    CHECK(parse_alpha_spec("-0.25").label() == "-0.25");

    AlphaSchedule sched = AlphaSchedule::make(spec, 10);
    CHECK(sched.is_constant());
    CHECK(sched.at(0) == 1.5);
    CHECK(sched.at(1000000) == 1.5);
    CHECK(sched.cap() == 1.5);
}

TEST_CASE("labels round trip through the parser") {
    for (const char* token :
         {"2", "0.5", "sigmoid1(0.5,0.25)", "sigmoid2(100,0.5)", "table(0:0,100:1,5000:2.5)"}) {
        AlphaSpec spec = parse_alpha_spec(token);
        AlphaSpec back = parse_alpha_spec(spec.label());
        CHECK(back.label() == spec.label());
        CHECK(back.kind == spec.kind);
    }
}

TEST_CASE("sigmoid1 follows its formula and saturates at 1/a") {
    AlphaSpec spec = parse_alpha_spec("sigmoid1(0.5,0.25)");
    const int N = 100;
    AlphaSchedule sched = AlphaSchedule::make(spec, N);
    for (long long n : {0LL, 10LL, 25LL, 40LL, 1000LL}) {
        const double expected = 1.0 / (0.5 + std::exp(-static_cast<double>(n) + 0.25 * N));
        CHECK(sched.at(n) == doctest::Approx(expected).epsilon(1e-15));
    }
    CHECK(sched.cap() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_FALSE(sched.is_constant());
    // Nondecreasing.
    double prev = sched.at(0);
    for (long long n = 1; n <= 60; ++n) {
        CHECK(sched.at(n) >= prev);
        prev = sched.at(n);
    }
}

TEST_CASE("sigmoid2 starts at zero and saturates at 1/b") {
    AlphaSpec spec = parse_alpha_spec("sigmoid2(100,0.5)");
    AlphaSchedule sched = AlphaSchedule::make(spec, 7);
    CHECK(sched.at(0) == 0.0);
    CHECK(sched.at(100) == doctest::Approx(100.0 / (100.0 + 50.0)).epsilon(1e-15));
    CHECK(sched.cap() == doctest::Approx(2.0).epsilon(1e-12));
    // b = 0 is a valid linear ramp with an unbounded cap.
    AlphaSchedule ramp = AlphaSchedule::make(parse_alpha_spec("sigmoid2(10,0)"), 7);
    CHECK(ramp.at(5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::isinf(ramp.cap()));
}

TEST_CASE("table schedules are piecewise constant") {
    AlphaSpec spec = parse_alpha_spec("table(0:0,100:1,5000:2.5)");
    AlphaSchedule sched = AlphaSchedule::make(spec, 3);
    CHECK(sched.at(0) == 0.0);
    CHECK(sched.at(99) == 0.0);
    CHECK(sched.at(100) == 1.0);
    CHECK(sched.at(4999) == 1.0);
    CHECK(sched.at(5000) == 2.5);
    CHECK(sched.at(1000000) == 2.5);
    CHECK(sched.cap() == 2.5);
}

TEST_CASE("schedule parse errors") {
    CHECK_THROWS_AS(parse_alpha_spec(""), ParseError);
    CHECK_THROWS_AS(parse_alpha_spec("sigmoid1(0.5)"), ParseError);
    CHECK_THROWS_AS(parse_alpha_spec("sigmoid1(0.5,0.25"), ParseError);
    CHECK_THROWS_AS(parse_alpha_spec("sigmoid3(1,1)"), ParseError);
    CHECK_THROWS_AS(parse_alpha_spec("table()"), ParseError);
    CHECK_THROWS_AS(parse_alpha_spec("table(0:x)"), ParseError);
    CHECK_THROWS_AS(parse_alpha_spec("banana"), ParseError);
}

TEST_CASE("schedule domain validation happens at binding") {
    CHECK_THROWS_AS(AlphaSchedule::make(parse_alpha_spec("-0.5"), 5), DomainError);
    CHECK_THROWS_AS(AlphaSchedule::make(parse_alpha_spec("-0.75"), 5), DomainError);
    // sigmoid parameters must keep alpha finite and positive.
    CHECK_THROWS_AS(AlphaSchedule::make(parse_alpha_spec("sigmoid1(0,0.25)"), 5), DomainError);
    CHECK_THROWS_AS(AlphaSchedule::make(parse_alpha_spec("sigmoid1(-1,0.25)"), 5), DomainError);
    CHECK_THROWS_AS(AlphaSchedule::make(parse_alpha_spec("sigmoid2(-3,0.5)"), 5), DomainError);
    // Table breakpoints must ascend with admissible values; steps before the
    // first breakpoint clamp to its value.
    AlphaSchedule clamped = AlphaSchedule::make(parse_alpha_spec("table(5:1)"), 5);
    CHECK(clamped.at(0) == 1.0);
    CHECK_THROWS_AS(AlphaSchedule::make(parse_alpha_spec("table(0:1,0:2)"), 5), DomainError);
    CHECK_THROWS_AS(AlphaSchedule::make(parse_alpha_spec("table(0:1,10:-0.6)"), 5), DomainError);
    CHECK_NOTHROW(AlphaSchedule::make(parse_alpha_spec("table(0:1,10:-0.25)"), 5));
}
