#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "doctest.h"
#include "newton/newton_engine.hpp"
#include "support.hpp"

using namespace newton;
using test_support::error_code_of;

namespace {

const double kPi = std::numbers::pi;

Interval half_line() { return {ExtendedReal::finite(0.0), ExtendedReal::pos_infinity()}; }
Interval whole_line() { return {ExtendedReal::neg_infinity(), ExtendedReal::pos_infinity()}; }

PrimitivePair cos_pair(Interval d) {
  return {RealFunction([](double x) { return std::cos(x); }), RealFunction([](double x) { return std::sin(x); }), d};
}

PrimitivePair lorentz_pair(Interval d) {
  return {RealFunction([](double x) { return 1.0 / (1.0 + x * x); }),
          RealFunction([](double x) { return std::atan(x); }), d};
}

PrimitivePair exp_neg_pair() {
  return {RealFunction([](double x) { return std::exp(-x); }), RealFunction([](double x) { return -std::exp(-x); }),
          half_line()};
}

// Primitive of cos^n built by the reduction formula, P_0 = x, P_1 = sin x.
double cos_power_primitive(int n, double x) {
  if (n == 0) return x;
  if (n == 1) return std::sin(x);
  return std::pow(std::cos(x), n - 1) * std::sin(x) / n + (n - 1.0) / n * cos_power_primitive(n - 2, x);
}

}  // namespace

TEST_SUITE("newton_engine") {
  TEST_CASE("integrals with closed-form primitives") {
    CHECK(newton_integral(cos_pair(Interval(0.0, kPi / 2))).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(newton_integral(lorentz_pair(whole_line())).value == doctest::Approx(kPi).epsilon(1e-9));
    CHECK(newton_integral(exp_neg_pair()).value == doctest::Approx(1.0).epsilon(1e-9));

    // F(0+) exists only as a limit: x log x - x -> 0.
    const PrimitivePair log_pair{RealFunction([](double x) { return std::log(x); }),
                                 RealFunction([](double x) { return x * std::log(x) - x; }), Interval(0.0, 1.0)};
    CHECK(newton_integral(log_pair, tight_limits()).value == doctest::Approx(-1.0).epsilon(1e-9));
  }

  TEST_CASE("a primitive without a finite limit is reported") {
    const PrimitivePair log1p_pair{RealFunction([](double x) { return 1.0 / (1.0 + x); }),
                                   RealFunction([](double x) { return std::log1p(x); }), half_line()};
    CHECK(error_code_of([&] { newton_integral(log1p_pair); }) == ErrorCode::non_convergent);
  }

  TEST_CASE("default tolerances") {
    CHECK(default_tolerance(Interval(0.0, 1.0)) == 1e-8);
    CHECK(default_tolerance(half_line()) == 1e-6);
  }

  TEST_CASE("orientation antisymmetry") {
    for (const PrimitivePair& p : {cos_pair(Interval(-1.0, 2.0)), lorentz_pair(whole_line()), exp_neg_pair(),
                                   lorentz_pair(Interval(ExtendedReal::neg_infinity(), ExtendedReal::finite(3.0)))}) {
      const double fwd = newton_integral(p).value;
      const double rev = newton_integral(p, {}, Orientation::reversed).value;
      CHECK(fwd == -rev);
    }
  }

  TEST_CASE("additivity over a split point") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (int i = 0; i < 20; ++i) {
      const double c = u(rng);
      for (const PrimitivePair& p : {cos_pair(Interval(-1.0, 1.0)), lorentz_pair(whole_line())}) {
        const SplitReport s = split_additive(p, c);
        CHECK(s.additivity.holds);
        CHECK(s.additivity.residual <= 1e-9);
      }
    }
    CHECK(error_code_of([] { split_additive(cos_pair(Interval(0.0, 1.0)), 1.0); }) ==
          ErrorCode::split_point_outside_interval);
  }

  TEST_CASE("linearity") {
    const Interval d(0.0, 2.0);
    const PrimitivePair sq{RealFunction([](double x) { return x * x; }),
                           RealFunction([](double x) { return x * x * x / 3.0; }), d};
    const PrimitivePair combo = linear_combine(cos_pair(d), sq, 2.0, -3.0);
    const double expected = 2.0 * std::sin(2.0) - 3.0 * 8.0 / 3.0;
    CHECK(newton_integral(combo, tight_limits()).value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(error_code_of([&] { linear_combine(cos_pair(d), cos_pair(Interval(0.0, 1.0)), 1.0, 1.0); }) ==
          ErrorCode::domain_mismatch);
  }

  TEST_CASE("monotonicity") {
    const Interval d(0.0, kPi);
    const PrimitivePair sin_pair{RealFunction([](double x) { return std::sin(x); }),
                                 RealFunction([](double x) { return -std::cos(x); }), d};
    const PrimitivePair one{RealFunction([](double) { return 1.0; }), RealFunction([](double x) { return x; }), d};
    const IdentityReport r = monotone_compare(sin_pair, one);
    CHECK(r.holds);
    CHECK(r.lhs == doctest::Approx(2.0));
    CHECK(r.rhs == doctest::Approx(kPi));
    CHECK(error_code_of([&] { monotone_compare(one, sin_pair); }) == ErrorCode::pointwise_order_violated);

    // Integrals over a half line compare too.
    const PrimitivePair slower{RealFunction([](double x) { return std::exp(-x / 2.0); }),
                               RealFunction([](double x) { return -2.0 * std::exp(-x / 2.0); }), half_line()};
    CHECK(monotone_compare(exp_neg_pair(), slower).holds);
  }

  TEST_CASE("ML bounds") {
    const PrimitivePair p = cos_pair(Interval(0.0, 1.0));
    CHECK(ml_bound_check(p, 1.0, BoundSide::upper).holds);
    CHECK(ml_bound_check(p, std::cos(1.0), BoundSide::lower).holds);
    CHECK(error_code_of([&] { ml_bound_check(p, 0.9, BoundSide::upper); }) == ErrorCode::pointwise_order_violated);
    CHECK(error_code_of([] { ml_bound_check(exp_neg_pair(), 1.0, BoundSide::upper); }) ==
          ErrorCode::infinite_interval);
  }

  TEST_CASE("constant-shift invariance") {
    for (const double c : {-3.0, 0.5, 7.25, 1024.0}) {
      for (const PrimitivePair& p : {cos_pair(Interval(-1.0, 2.0)), lorentz_pair(whole_line()), exp_neg_pair()}) {
        PrimitivePair shifted = p;
        const RealFunction F = p.primitive;
        shifted.primitive = RealFunction([F, c](double x) { return F(x) + c; });
        const double base = newton_integral(p, tight_limits()).value;
        CHECK(std::fabs(newton_integral(shifted, tight_limits()).value - base) <= 1e-12 * (1.0 + std::fabs(c)));
      }
    }
  }

  TEST_CASE("Hake: the improper integral is the limit of proper ones") {
    // -log(1 - x) on (0, 1): unbounded at 1, integral 1.
    const PrimitivePair p{RealFunction([](double x) { return -std::log1p(-x); }),
                          RealFunction([](double x) { return (1.0 - x) * std::log1p(-x) - (1.0 - x); }),
                          Interval(0.0, 1.0)};
    const IdentityReport r = hake_check(p, tight_limits());
    CHECK(r.holds);
    CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hake_check(lorentz_pair(half_line())).holds);

    // A schedule that leaves the interval is an error.
    CHECK(error_code_of([&] { hake_check(p, {}, [](int k) { return 2.0 + k; }); }) == ErrorCode::invalid_argument);
  }

  TEST_CASE("by-parts chain for x^n e^{-x}, n <= 12") {
    std::uint64_t factorial = 1;
    for (int n = 1; n <= 12; ++n) {
      factorial *= static_cast<std::uint64_t>(n);
      const ByPartsInput in{
          RealFunction([](double x) { return -std::exp(-x); }),
          RealFunction([](double x) { return std::exp(-x); }),
          RealFunction([n](double x) { return std::pow(x, n); }),
          RealFunction([n](double x) { return n * std::pow(x, n - 1); }),
          half_line(),
          gamma_primitive(n),
          RealFunction([n, P = gamma_primitive(n - 1)](double x) { return -n * P(x); }),
      };
      const IdentityReport r = integrate_by_parts(in, tight_limits());
      CAPTURE(n);
      CHECK(r.holds);
      CHECK(std::fabs(r.lhs - static_cast<double>(factorial)) <= 1e-12 * static_cast<double>(factorial));
    }
  }

  TEST_CASE("by-parts chain for cos^n on (0, pi/2), n <= 20") {
    const Interval d(0.0, kPi / 2);
    // Two anchor values from an independent high-precision quadrature.
    const double w10 = 0.38656315854718159;
    const double w17 = 0.29953837012660542;
    for (int n = 2; n <= 20; ++n) {
      const ByPartsInput in{
          RealFunction([](double x) { return std::sin(x); }),
          RealFunction([](double x) { return std::cos(x); }),
          RealFunction([n](double x) { return std::pow(std::cos(x), n - 1); }),
          RealFunction([n](double x) { return -(n - 1.0) * std::pow(std::cos(x), n - 2) * std::sin(x); }),
          d,
          RealFunction([n](double x) { return cos_power_primitive(n, x); }),
          RealFunction([n](double x) { return -(n - 1.0) * (cos_power_primitive(n - 2, x) - cos_power_primitive(n, x)); }),
      };
      const IdentityReport r = integrate_by_parts(in, tight_limits());
      CAPTURE(n);
      CHECK(r.holds);
      if (n == 10) CHECK(r.lhs == doctest::Approx(w10).epsilon(1e-12));
      if (n == 17) CHECK(r.lhs == doctest::Approx(w17).epsilon(1e-12));
    }
  }

  TEST_CASE("substitution") {
    // x = t^2 maps (0, 1) onto (0, 1).
    const PrimitivePair p = cos_pair(Interval(0.0, 1.0));
    const IdentityReport r = substitute(p, RealFunction([](double t) { return t * t; }),
                                        RealFunction([](double t) { return 2.0 * t; }), Interval(0.0, 1.0), false);
    CHECK(r.holds);
    CHECK(r.rhs == doctest::Approx(std::sin(1.0)));

    // x = -t reverses (0, +inf) onto (-inf, 0).
    const PrimitivePair left = lorentz_pair(Interval(ExtendedReal::neg_infinity(), ExtendedReal::finite(0.0)));
    const IdentityReport flip = substitute(left, RealFunction([](double t) { return -t; }),
                                           RealFunction([](double) { return -1.0; }), half_line(), true);
    CHECK(flip.holds);
    CHECK(flip.lhs == doctest::Approx(-kPi / 2).epsilon(1e-9));

    const PrimitivePair positive = lorentz_pair(half_line());
    CHECK(error_code_of([&] {
            substitute(positive, RealFunction([](double t) { return t; }), RealFunction([](double) { return 1.0; }),
                       Interval(-1.0, 1.0), false);
          }) == ErrorCode::range_violation);
  }

  TEST_CASE("primitive verification") {
    const Interval d(0.0, 3.0);
    const RealFunction f([](double x) { return std::cos(x); });
    CHECK_NOTHROW(require_primitive(RealFunction([](double x) { return std::sin(x) + 4.0; }), f, d));
    CHECK(error_code_of([&] { require_primitive(RealFunction([](double x) { return std::cos(x); }), f, d); }) ==
          ErrorCode::primitive_mismatch);
  }

  TEST_CASE("gamma primitive") {
    for (const int n : {0, 1, 2, 5, 12, 22, 23, 40, 100}) {
      CAPTURE(n);
      CHECK(primitive_mismatch(gamma_primitive(n), gamma_kernel(n), Interval(0.05, 3.0 * n + 30.0)) < 1e-6);
      CHECK_NOTHROW(require_primitive(gamma_primitive(n), gamma_kernel(n), Interval(0.05, 3.0 * n + 30.0)));
    }
    std::uint64_t factorial = 1;
    for (int n = 0; n <= 20; ++n) {
      if (n > 0) factorial *= static_cast<std::uint64_t>(n);
      const double v = newton_integral(gamma_pair(n), tight_limits()).value;
      CHECK(std::fabs(v - static_cast<double>(factorial)) <= 1e-12 * static_cast<double>(factorial));
    }
    CHECK(error_code_of([] { gamma_kernel(-1); }) == ErrorCode::invalid_argument);
  }
}
