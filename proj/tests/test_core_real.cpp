#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "newton/core_real.hpp"
#include "support.hpp"

using namespace newton;
using test_support::error_code_of;

TEST_SUITE("core_real") {
  TEST_CASE("extended reals order the infinities around the finite values") {
    const auto lo = ExtendedReal::neg_infinity();
    const auto hi = ExtendedReal::pos_infinity();
    const auto x = ExtendedReal::finite(-1e308);
    const auto y = ExtendedReal::finite(1e308);
    CHECK(lo < x);
    CHECK(x < y);
    CHECK(y < hi);
    CHECK(ExtendedReal::from_double(-INFINITY) == lo);
    CHECK(ExtendedReal::from_double(INFINITY) == hi);
    CHECK(ExtendedReal::from_double(2.5).value() == 2.5);
    CHECK(hi.as_double() == INFINITY);
  }

  TEST_CASE("bad extended reals are rejected") {
    CHECK(error_code_of([] { ExtendedReal::from_double(std::nan("")); }) == ErrorCode::invalid_argument);
    CHECK(error_code_of([] { ExtendedReal::finite(INFINITY); }) == ErrorCode::invalid_argument);
    CHECK(error_code_of([] { (void)ExtendedReal::pos_infinity().value(); }) == ErrorCode::infinite_interval);
  }

  TEST_CASE("intervals") {
    const Interval unit(0.0, 1.0);
    CHECK(unit.is_finite());
    CHECK(unit.length() == 1.0);
    CHECK(unit.contains(0.5));
    CHECK_FALSE(unit.contains(0.0));
    CHECK_FALSE(unit.contains(1.0));

    const Interval half_line(ExtendedReal::finite(0.0), ExtendedReal::pos_infinity());
    CHECK_FALSE(half_line.is_finite());
    CHECK(half_line.contains(1e300));
    CHECK(error_code_of([&] { (void)half_line.length(); }) == ErrorCode::infinite_interval);
    CHECK(error_code_of([] { Interval(1.0, 1.0); }) == ErrorCode::invalid_argument);
    CHECK(error_code_of([] { Interval(2.0, 1.0); }) == ErrorCode::invalid_argument);
  }

  TEST_CASE("limit config validation") {
    LimitConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.approach_factor = 1.0;
    CHECK(error_code_of([&] { cfg.validate(); }) == ErrorCode::invalid_argument);
    cfg = {};
    cfg.max_steps = 2;
    CHECK(error_code_of([&] { cfg.validate(); }) == ErrorCode::invalid_argument);
    CHECK(tight_limits().stall_tolerance < cfg.stall_tolerance);
  }

  TEST_CASE("sequence limits") {
    const LimitConfig cfg;
    const auto r = limit_of_sequence([](int k) { return 3.0 + std::ldexp(1.0, -k); }, cfg);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(r.steps_used <= cfg.max_steps);

    CHECK(error_code_of([&] { limit_of_sequence([](int k) { return static_cast<double>(k); }, cfg); }) ==
          ErrorCode::non_convergent);
    CHECK(error_code_of([&] { limit_of_sequence([](int) { return std::nan(""); }, cfg); }) ==
          ErrorCode::evaluation_failure);
  }

  TEST_CASE("one-sided limits at a removable singularity") {
    const RealFunction sinc([](double x) { return std::sin(x) / x; });
    CHECK(one_sided_limit(sinc, 0.0, Side::right).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(one_sided_limit(sinc, 0.0, Side::left).value == doctest::Approx(1.0).epsilon(1e-9));

    // x log x -> 0 from the right; the left side is outside the domain.
    const RealFunction xlogx([](double x) { return x * std::log(x); });
    CHECK(std::fabs(one_sided_limit(xlogx, 0.0, Side::right, tight_limits()).value) < 1e-9);
  }

  TEST_CASE("limits at infinity") {
    const RealFunction atan([](double x) { return std::atan(x); });
    CHECK(limit_at_infinity(atan, Direction::pos).value == doctest::Approx(std::numbers::pi / 2).epsilon(1e-9));
    CHECK(limit_at_infinity(atan, Direction::neg).value == doctest::Approx(-std::numbers::pi / 2).epsilon(1e-9));
    const RealFunction sin([](double x) { return std::sin(x); });
    CHECK(error_code_of([&] { limit_at_infinity(sin, Direction::pos); }) == ErrorCode::non_convergent);
  }

  TEST_CASE("endpoint limits dispatch on the endpoint kind") {
    const RealFunction atan([](double x) { return std::atan(x); });
    CHECK(endpoint_limit(atan, ExtendedReal::pos_infinity(), Side::left).value ==
          doctest::Approx(std::numbers::pi / 2));
    CHECK(endpoint_limit(atan, ExtendedReal::finite(1.0), Side::left).value ==
          doctest::Approx(std::numbers::pi / 4));
  }

  TEST_CASE("sample points stay inside the interval") {
    for (const Interval& iv : {Interval(-2.0, 3.0), Interval(ExtendedReal::finite(1.0), ExtendedReal::pos_infinity()),
                               Interval(ExtendedReal::neg_infinity(), ExtendedReal::finite(0.0)),
                               Interval(ExtendedReal::neg_infinity(), ExtendedReal::pos_infinity())}) {
      const auto xs = sample_points(iv, 65);
      CHECK(xs.size() == 65u);
      for (const double x : xs) CHECK(iv.contains(x));
    }
    CHECK(error_code_of([] { sample_points(Interval(0.0, 1.0), 0); }) == ErrorCode::invalid_argument);
  }
}
