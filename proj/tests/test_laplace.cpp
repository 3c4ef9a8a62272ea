#include <cmath>
#include <cstdint>
#include <numbers>

#include "doctest.h"
#include "newton/laplace.hpp"
#include "support.hpp"

using namespace newton;
using test_support::error_code_of;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

}  // namespace

TEST_SUITE("laplace") {
  TEST_CASE("config") {
    const LaplaceConfig cfg{0.3, 1000};
    CHECK(cfg.delta() == doctest::Approx(std::pow(1000.0, -0.4)));
    CHECK_NOTHROW(cfg.validate());
    CHECK_NOTHROW(LaplaceConfig{0.3, 1}.validate());
    CHECK(error_code_of([] { LaplaceConfig{0.5, 10}.validate(); }) == ErrorCode::invalid_argument);
    CHECK(error_code_of([] { LaplaceConfig{0.0, 10}.validate(); }) == ErrorCode::invalid_argument);
    CHECK(error_code_of([] { LaplaceConfig{0.3, 0}.validate(); }) == ErrorCode::invalid_argument);
  }

  TEST_CASE("gamma integral in both modes") {
    std::uint64_t factorial = 1;
    for (int n = 0; n <= 20; ++n) {
      if (n > 0) factorial *= static_cast<std::uint64_t>(n);
      const double exact = static_cast<double>(factorial);
      CAPTURE(n);
      const GammaResult e = gamma_integral(n, GammaMode::exact_primitive);
      CHECK(std::fabs(e.value - exact) <= 1e-12 * exact);
      if (n <= 12) {
        const GammaResult g = gamma_integral(n, GammaMode::numeric);
        CHECK(std::fabs(g.value - exact) <= 1e-6 * exact);
        CHECK(g.tail_bound < 1e-6 * exact);
        CHECK(g.truncation > n);
      }
    }
    CHECK(error_code_of([] { gamma_integral(171, GammaMode::exact_primitive); }) == ErrorCode::overflow);
    CHECK(error_code_of([] { gamma_integral(-1, GammaMode::numeric); }) == ErrorCode::invalid_argument);
    CHECK(log_gamma_integral(200) == doctest::Approx(std::lgamma(201.0)).epsilon(1e-13));
    CHECK(log_gamma_integral(0) == doctest::Approx(0.0));
  }

  TEST_CASE("centered integrand") {
    for (const long long n : {1LL, 10LL, 1000LL}) {
      const CenteredIntegrand c = centered_integrand(n);
      CHECK(c.shape_verified);
      CHECK(c.f(0.0) == 1.0);
      CHECK(c.f(-1.0) == 0.0);
      CHECK(c.f(0.5) == doctest::Approx(std::pow(std::exp(-0.5) * 1.5, static_cast<double>(n))));
    }
  }

  TEST_CASE("concentration budget: calibrate small, assert larger") {
    const BudgetConstants k = calibrate_budget({0.3, 25});
    CHECK(k.tail > 0.0);
    CHECK(k.correction > 0.0);
    for (const long long n : {100LL, 400LL, 1600LL}) {
      CAPTURE(n);
      const ConcentrationBudget b = concentrate({0.3, n}, k);
      const double pieces = b.I1 + b.I2 + b.I3 + b.I4;
      CHECK(pieces == doctest::Approx(b.full_integral).epsilon(1e-8));
      CHECK(b.I4 <= b.I4_majorant);
      CHECK(b.rel_correction_bound < 1.0);
    }
    CHECK(error_code_of([] { concentrate({0.3, 1}); }) == ErrorCode::invalid_argument);
    BudgetConstants strict;
    strict.correction = 1e-6;
    CHECK(error_code_of([&] { concentrate({0.3, 100}, strict); }) == ErrorCode::budget_violation);
  }

  TEST_CASE("Gauss integral") {
    const GaussReport g = gauss_integral_report();
    CHECK(std::fabs(g.value - kSqrtPi) <= 1e-9);
    CHECK(g.i7_squared == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-12));
    CHECK(g.negative_half_line == g.half_line);
    CHECK_FALSE(g.exchange);
    CHECK(gauss_integral() == g.value);

    // Truncated Simpson sum over (0, 10); the rest is below e^{-100}.
    const double simpson = test_support::simpson([](double t) { return std::exp(-t * t); }, 0.0, 10.0, 5000);
    CHECK(std::fabs(g.half_line - simpson) <= 1e-6);

    const GaussReport c = gauss_integral_report(4.0);
    REQUIRE(c.exchange);
    CHECK(c.exchange->holds);
  }

  TEST_CASE("reduction to the Gauss integral") {
    for (const long long n : {100LL, 1000LL}) {
      const GaussReduction r = reduce_to_gauss({0.3, n});
      CHECK(r.identity.holds);
      CHECK(r.corrected_residual <= 1e-9 * r.identity.lhs);
      CHECK(r.i6 >= 0.0);
    }
  }

  TEST_CASE("Stirling through Laplace") {
    // 1 - log sqrt(2 pi): the error of the main term at n = 1.
    CHECK(laplace_error_constant() == doctest::Approx(1.0 - 0.5 * std::log(2.0 * std::numbers::pi)).epsilon(1e-9));
    for (const long long n : {10LL, 100LL, 1000LL, 10000LL}) {
      CAPTURE(n);
      const AsymptoticRecord r = stirling_via_laplace(n);
      CHECK(r.abs_error <= r.predicted_bound);
      // The leading error term of log n! - log(sqrt(2 pi n) (n/e)^n) is 1/(12n).
      CHECK(r.abs_error == doctest::Approx(1.0 / (12.0 * n)).epsilon(0.01));
    }
    CHECK(stirling_via_laplace(100, 0.3, 1.0).predicted_bound == doctest::Approx(std::pow(100.0, -0.2)));
  }
}
