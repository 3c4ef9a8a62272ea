#pragma once

#include "newton/compensated_sum.hpp"
#include "newton/newton_engine.hpp"
#include "newton/primitive_builder.hpp"

namespace newton {

/// W_n = integral of cos^n over (0, pi/2).
struct WallisValue {
  int n = 0;
  double by_recurrence = 0.0;
  double by_integral = 0.0;  // NaN above kWallisIntegralMax
  double by_closed_form = 0.0;
  /// Pairwise relative agreement within 1e-9 (integral skipped when NaN).
  bool agree = false;
};

inline constexpr int kWallisIntegralMax = 30;
inline constexpr double kWallisAgreement = 1e-9;

/// W_n = ((n-1)/n) W_{n-2} from W_0 = pi/2, W_1 = 1.
double wallis_recurrence(int n);

/// Config used by wallis_integral when none is given.
BuildConfig wallis_build_config();

/// Newton integral of cos^n over (0, pi/2) with a built primitive.
double wallis_integral(int n, const BuildConfig& cfg = wallis_build_config());

/// log W_n from the factorial closed forms.
double wallis_log_closed_form(long long n);
double wallis_log_closed_form(long long n, const LogFactorialTable& table);
double wallis_closed_form(long long n);

WallisValue wallis_value(int n, bool with_integral = true);

/// holds iff n/(n+1) - tol <= W_n / W_{n-1} <= 1 + tol; lhs is the ratio,
/// rhs is n/(n+1), tolerance 1e-12. Throws InvalidArgument for n < 2.
IdentityReport ratio_bounds_check(long long n);

struct SandwichScan {
  long long n_max = 0;
  long long violations = 0;  // sandwich or strict decrease failures
  long long first_violation = 0;
};

/// Ratio bounds and strict decrease for every 1 <= n <= n_max in one pass
/// over a shared log-factorial table.
SandwichScan sandwich_scan(long long n_max);

struct StirlingConstantReport {
  long long n = 0;
  double ratio = 0.0;       // W_{2n+1} / W_{2n}
  double d_estimate = 0.0;  // sqrt(2 pi ratio (2n+1)/(2n))
  /// d_n^2 / d_{2n} from the incomplete Stirling values; the identity makes
  /// it equal to d_estimate.
  double d_from_sums = 0.0;
  double residual = 0.0;  // |d_estimate - d_from_sums|
};

StirlingConstantReport determine_stirling_constant(long long n);

/// sqrt(2 pi).
double stirling_constant();

/// Partial sum of the cosine power series through x^{2 terms - 2}.
double cos_series(double x, int terms);

}  // namespace newton
