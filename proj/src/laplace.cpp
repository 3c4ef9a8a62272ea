#include "newton/laplace.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "newton/compensated_sum.hpp"
#include "newton/primitive_builder.hpp"

namespace newton {

double LaplaceConfig::delta() const { return std::pow(static_cast<double>(n), -0.5 + epsilon / 3.0); }

void LaplaceConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw Error(ErrorCode::invalid_argument, "epsilon must lie in (0, 1/2)");
  if (n < 1) throw Error(ErrorCode::invalid_argument, "n must be >= 1");
  if (!(delta() < 1.0) && n > 1) throw Error(ErrorCode::invalid_argument, "delta must be below 1");
}

// Gamma integral ----------------------------------------------------------------

double log_gamma_integral(long long n) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "gamma integral needs n >= 0");
  const double i0 = newton_integral(gamma_pair(0), tight_limits()).value;
  CompensatedSum acc(std::log(i0));
  for (long long k = 2; k <= n; ++k) acc += std::log(static_cast<double>(k));
  return acc.value();
}

GammaResult gamma_integral(int n, GammaMode mode) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "gamma integral needs n >= 0");
  constexpr int kLinearMax = 170;
  if (n > kLinearMax) {
    std::ostringstream os;
    os.precision(17);
    os << n << "! overflows binary64; log value " << log_gamma_integral(n);
    throw Error(ErrorCode::overflow, os.str());
  }
  GammaResult r;
  if (mode == GammaMode::exact_primitive) {
    r.value = newton_integral(gamma_pair(n), tight_limits()).value;
    r.log_value = std::log(r.value);
    return r;
  }

  const double nd = static_cast<double>(n);
  const double T = nd + 40.0 * std::sqrt(nd + 1.0);
  const double peak = n == 0 ? 1.0 : std::exp(nd * std::log(nd) - nd);
  BuildConfig cfg;
  cfg.target_uniform_gap = 1e-7 * peak / T;
  cfg.max_refinement = 24;
  const RealFunction kernel = gamma_kernel(n);
  const Interval window(0.0, T);
  const PiecewisePrimitive P = build_primitive(kernel, window, cfg);
  r.value = newton_integral({kernel, P.as_function(), window}, tight_limits()).value;
  r.log_value = std::log(r.value);
  r.truncation = T;
  r.tail_bound = std::exp(nd * std::log(T) - T) / (1.0 - nd / T);
  return r;
}

// Concentration -----------------------------------------------------------------

CenteredIntegrand centered_integrand(long long n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "n must be >= 1");
  const double nd = static_cast<double>(n);
  CenteredIntegrand c;
  c.n = n;
  c.f = RealFunction(
      [nd](double y) {
        if (y < -1.0) return std::numeric_limits<double>::quiet_NaN();
        if (y == -1.0) return 0.0;
        return std::exp(nd * (std::log1p(y) - y));
      },
      "(e^-y (1+y))^" + std::to_string(n));

  constexpr int kSamples = 257;
  bool ok = c.f(0.0) == 1.0 && c.f(-1.0) == 0.0;
  double prev = c.f(-1.0);
  for (int j = 1; j <= kSamples && ok; ++j) {
    const double v = c.f(-1.0 + static_cast<double>(j) / kSamples);
    ok = v >= prev && v <= 1.0;
    prev = v;
  }
  for (int j = 1; j <= kSamples && ok; ++j) {
    const double v = c.f(50.0 * static_cast<double>(j) / kSamples);
    ok = v <= prev;
    prev = v;
  }
  c.shape_verified = ok;
  return c;
}

namespace {

double integrate_piece(const RealFunction& f, double lo, double hi) {
  BuildConfig cfg;
  cfg.target_uniform_gap = 1e-11;
  cfg.max_refinement = 24;
  const Interval piece(lo, hi);
  const PiecewisePrimitive P = build_primitive(f, piece, cfg);
  return newton_integral({f, P.as_function(), piece}, tight_limits()).value;
}

ConcentrationBudget measure(const LaplaceConfig& cfg) {
  cfg.validate();
  const double nd = static_cast<double>(cfg.n);
  const double delta = cfg.delta();
  if (!(nd * delta * delta * delta < 1.0)) {
    std::ostringstream os;
    os << "n delta^3 = " << nd * delta * delta * delta << " is not below 1";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  const RealFunction f = centered_integrand(cfg.n).f;
  const RealFunction gauss([nd](double y) { return std::exp(-nd * y * y / 2.0); });

  ConcentrationBudget b;
  b.I1 = integrate_piece(f, -1.0, -delta);
  b.I2 = integrate_piece(f, -delta, delta);
  b.I3 = integrate_piece(f, delta, 4.0);
  // Past the cut the majorant e^{-ny/2} leaves under e^{-100}.
  b.I4 = integrate_piece(f, 4.0, 4.0 + std::max(4.0, 200.0 / nd));
  b.I4_majorant = 2.0 * std::exp(-2.0 * nd) / nd;
  b.main_term = integrate_piece(gauss, -delta, delta);
  b.r = b.I2 / b.main_term - 1.0;
  b.rel_correction_bound = nd * delta * delta * delta;
  b.tail_bound = std::exp(-nd * delta * delta / 2.0);
  b.full_integral = std::exp(log_factorial(cfg.n) + nd - (nd + 1.0) * std::log(nd));
  return b;
}

}  // namespace

ConcentrationBudget concentrate(const LaplaceConfig& cfg, const BudgetConstants& constants) {
  const ConcentrationBudget b = measure(cfg);
  const double tail_cap = constants.tail * b.tail_bound;
  const auto violation = [&](const char* what, double value, double cap) {
    std::ostringstream os;
    os.precision(17);
    os << what << " = " << value << " exceeds " << cap << " at n = " << cfg.n;
    throw Error(ErrorCode::budget_violation, os.str());
  };
  if (b.I1 > tail_cap) violation("I1", b.I1, tail_cap);
  if (b.I3 > tail_cap) violation("I3", b.I3, tail_cap);
  if (b.I4 > tail_cap) violation("I4", b.I4, tail_cap);
  if (b.I4 > b.I4_majorant) violation("I4", b.I4, b.I4_majorant);
  const double r_cap = constants.correction * b.rel_correction_bound;
  if (std::fabs(b.r) > r_cap) violation("|r|", std::fabs(b.r), r_cap);
  return b;
}

BudgetConstants calibrate_budget(const LaplaceConfig& cfg) {
  const ConcentrationBudget b = measure(cfg);
  BudgetConstants c;
  c.tail = std::max({b.I1, b.I3, b.I4}) / b.tail_bound;
  c.correction = std::fabs(b.r) / b.rel_correction_bound;
  return c;
}

// Gauss integral ----------------------------------------------------------------

GaussReduction reduce_to_gauss(const LaplaceConfig& cfg, double tail_constant) {
  cfg.validate();
  const double nd = static_cast<double>(cfg.n);
  const double delta = cfg.delta();
  const double s = delta * std::sqrt(nd / 2.0);

  GaussReduction out;
  const double lhs = integrate_piece([nd](double y) { return std::exp(-nd * y * y / 2.0); }, -delta, delta);
  const double scale = std::sqrt(2.0 / nd);
  const double gauss = gauss_integral();
  out.identity = IdentityReport::equality(lhs, scale * gauss, tail_constant * std::exp(-s * s));
  // Beyond s + 12 the tail is under e^{-144}.
  out.i6 = integrate_piece([](double t) { return std::exp(-t * t); }, s, s + 12.0);
  out.corrected_residual = std::fabs(lhs - scale * (gauss - 2.0 * out.i6));
  return out;
}

namespace {

// (integral over (0, +inf) of e^{-t^2})^2 after the exchange: the inner
// integral in x has the primitive -e^{-x^2 (1 + z^2)} / (2 (1 + z^2)), the
// outer one arctan(z) / 2. `sign` flips the variable of the Gaussian.
double squared_half_line(double sign) {
  const Interval half_line(ExtendedReal::finite(0.0), ExtendedReal::pos_infinity());
  const RealFunction inner([sign, half_line](double z) {
    const double s = 1.0 + z * z;
    const PrimitivePair section{
        RealFunction([sign, s](double x) {
          const double t = sign * x;
          return x * std::exp(-t * t * s);
        }),
        RealFunction([sign, s](double x) {
          const double t = sign * x;
          return -std::exp(-t * t * s) / (2.0 * s);
        }),
        half_line,
    };
    return newton_integral(section, tight_limits()).value;
  });
  const RealFunction outer_primitive([](double z) { return std::atan(z) / 2.0; });
  return newton_integral({inner, outer_primitive, half_line}, tight_limits()).value;
}

}  // namespace

GaussReport gauss_integral_report(double certify_b) {
  GaussReport r;
  r.i7_squared = squared_half_line(1.0);
  r.half_line = std::sqrt(r.i7_squared);
  // t -> -t maps (-inf, 0) onto (0, +inf); the reversed orientation cancels
  // the sign of dt, and (-x)^2 = x^2 exactly.
  r.negative_half_line = std::sqrt(squared_half_line(-1.0));
  r.value = r.negative_half_line + r.half_line;
  if (certify_b > 0.0) {
    BuildConfig coarse;
    coarse.target_uniform_gap = 1e-6;
    r.exchange = special_infinite_fubini(certify_b, coarse);
  }
  return r;
}

double gauss_integral() {
  static const double value = gauss_integral_report().value;
  return value;
}

// Assembly ----------------------------------------------------------------------

namespace {

double laplace_log_main_term(long long n) {
  const double nd = static_cast<double>(n);
  return -nd + (nd + 1.0) * std::log(nd) + 0.5 * std::log(2.0 / nd) + std::log(gauss_integral());
}

}  // namespace

double laplace_error_constant() {
  static const double value = std::fabs(log_factorial(1) - laplace_log_main_term(1));
  return value;
}

AsymptoticRecord stirling_via_laplace(long long n, double epsilon, std::optional<double> constant) {
  LaplaceConfig cfg{epsilon, n};
  cfg.validate();
  AsymptoticRecord r;
  r.n = n;
  r.log_factorial_exact = log_factorial(n);
  r.approximation = laplace_log_main_term(n);
  r.abs_error = std::fabs(r.log_factorial_exact - r.approximation);
  r.predicted_bound =
      constant.value_or(laplace_error_constant()) * std::pow(static_cast<double>(n), -0.5 + epsilon);
  return r;
}

}  // namespace newton
