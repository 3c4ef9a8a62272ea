#include "newton/wallis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "newton/sum_asymptotics.hpp"

namespace newton {

double wallis_recurrence(int n) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "Wallis index must be >= 0");
  double w = n % 2 == 0 ? std::numbers::pi / 2.0 : 1.0;
  for (int k = n % 2 == 0 ? 2 : 3; k <= n; k += 2) w *= static_cast<double>(k - 1) / static_cast<double>(k);
  return w;
}

BuildConfig wallis_build_config() {
  BuildConfig cfg;
  cfg.target_uniform_gap = 1e-10;
  return cfg;
}

double wallis_integral(int n, const BuildConfig& cfg) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "Wallis index must be >= 0");
  const RealFunction cos_power([n](double x) { return std::pow(std::cos(x), n); });
  const Interval quarter(0.0, std::numbers::pi / 2.0);
  const PiecewisePrimitive P = build_primitive(cos_power, quarter, cfg);
  return newton_integral({cos_power, P.as_function(), quarter}, tight_limits()).value;
}

namespace {

template <class LogFact>
double log_closed_form(long long n, const LogFact& lf) {
  const long long m = n / 2;
  const double md = static_cast<double>(m);
  // log(2^m m!)
  const double half = md * std::numbers::ln2 + lf(m);
  if (n % 2 == 0) return lf(2 * m) - 2.0 * half + std::log(std::numbers::pi / 2.0);
  return 2.0 * half - lf(2 * m + 1);
}

}  // namespace

double wallis_log_closed_form(long long n) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "Wallis index must be >= 0");
  return log_closed_form(n, [](long long k) { return log_factorial(k); });
}

double wallis_log_closed_form(long long n, const LogFactorialTable& table) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "Wallis index must be >= 0");
  return log_closed_form(n, [&table](long long k) { return table(static_cast<std::size_t>(k)); });
}

double wallis_closed_form(long long n) { return std::exp(wallis_log_closed_form(n)); }

WallisValue wallis_value(int n, bool with_integral) {
  WallisValue v;
  v.n = n;
  v.by_recurrence = wallis_recurrence(n);
  v.by_closed_form = wallis_closed_form(n);
  v.by_integral = with_integral && n <= kWallisIntegralMax ? wallis_integral(n)
                                                          : std::numeric_limits<double>::quiet_NaN();
  const auto close = [](double a, double b) { return std::fabs(a - b) <= kWallisAgreement * std::fabs(b); };
  v.agree = close(v.by_recurrence, v.by_closed_form);
  if (!std::isnan(v.by_integral)) {
    v.agree = v.agree && close(v.by_integral, v.by_recurrence) && close(v.by_integral, v.by_closed_form);
  }
  return v;
}

namespace {

IdentityReport ratio_report(long long n, double ratio) {
  constexpr double kTol = 1e-12;
  const double lower = static_cast<double>(n) / static_cast<double>(n + 1);
  IdentityReport r;
  r.lhs = ratio;
  r.rhs = lower;
  r.tolerance = kTol;
  r.residual = std::max({0.0, lower - ratio, ratio - 1.0});
  r.holds = lower - kTol <= ratio && ratio <= 1.0 + kTol;
  return r;
}

}  // namespace

IdentityReport ratio_bounds_check(long long n) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "ratio bounds need n >= 2");
  const LogFactorialTable table(static_cast<std::size_t>(n + 1));
  const double ratio = std::exp(wallis_log_closed_form(n, table) - wallis_log_closed_form(n - 1, table));
  return ratio_report(n, ratio);
}

SandwichScan sandwich_scan(long long n_max) {
  if (n_max < 1) throw Error(ErrorCode::invalid_argument, "n_max must be >= 1");
  const LogFactorialTable table(static_cast<std::size_t>(n_max + 1));
  SandwichScan s;
  s.n_max = n_max;
  double prev = wallis_log_closed_form(0, table);
  for (long long n = 1; n <= n_max; ++n) {
    const double cur = wallis_log_closed_form(n, table);
    const bool ok = cur < prev && ratio_report(n, std::exp(cur - prev)).holds;
    if (!ok) {
      if (s.violations == 0) s.first_violation = n;
      ++s.violations;
    }
    prev = cur;
  }
  return s;
}

StirlingConstantReport determine_stirling_constant(long long n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "n must be >= 1");
  const LogFactorialTable table(static_cast<std::size_t>(2 * n + 1));
  StirlingConstantReport r;
  r.n = n;
  r.ratio = std::exp(wallis_log_closed_form(2 * n + 1, table) - wallis_log_closed_form(2 * n, table));
  const double nd = static_cast<double>(n);
  r.d_estimate = std::sqrt(2.0 * std::numbers::pi * r.ratio * (2.0 * nd + 1.0) / (2.0 * nd));
  const double d_n = incomplete_stirling(n).d_n;
  const double d_2n = incomplete_stirling(2 * n).d_n;
  r.d_from_sums = d_n * d_n / d_2n;
  r.residual = std::fabs(r.d_estimate - r.d_from_sums);
  return r;
}

double stirling_constant() { return std::sqrt(2.0 * std::numbers::pi); }

double cos_series(double x, int terms) {
  double term = 1.0;
  CompensatedSum sum;
  for (int k = 0; k < terms; ++k) {
    sum += term;
    term *= -x * x / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
  }
  return sum.value();
}

}  // namespace newton
