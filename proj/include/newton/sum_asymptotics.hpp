#pragma once

#include <cstdint>
#include <functional>

#include "newton/core_real.hpp"

namespace newton {

struct SumIntegralReport {
  double sum = 0.0;       // sum of f(n) over a < n <= b
  double integral = 0.0;  // Newton integral over (a, b)
  /// (sum - integral) / (f(b) - f(a)); 0 for a constant f.
  double theta = 0.0;
  long long a = 0;
  long long b = 0;
  bool constant = false;
  /// theta within [-1e-12, 1 + 1e-12].
  bool theta_in_range = false;
};

inline constexpr double kThetaSlack = 1e-12;

/// Throws NotMonotone when sampled values of f are not monotone on [a, b],
/// ConstantFunction when f(a) = f(b) but the sum and integral disagree, and
/// InvalidArgument for b <= a.
SumIntegralReport monotone_sum_vs_integral(const RealFunction& f, const RealFunction& F, long long a, long long b);

struct TailConstantReport {
  double c_estimate = 0.0;       // sum of terms(m), m = 1..N_max
  long long n_used = 0;          // n
  double remainder_bound = 0.0;  // decay_scale / n
  double partial_sum = 0.0;      // sum of terms(m), m = 1..n
  /// |partial_sum - c_estimate| <= remainder_bound + decay_scale / N_max.
  bool holds = false;
};

/// Throws DecayViolation when a sampled |terms(m)| exceeds decay_scale/m^2.
TailConstantReport tail_constant(const std::function<double(long long)>& terms, double decay_scale, long long n,
                                 long long N_max);

/// sum_{m=n+1}^{N} 1/m^2 next to its two upper bounds.
struct ReciprocalSquareTail {
  double direct_sum = 0.0;
  /// Newton integral of x^{-2} over (n, N): 1/n - 1/N.
  double integral_route = 0.0;
  /// Telescoped sum of 1/(m(m-1)) = 1/(m-1) - 1/m over n < m <= N.
  double telescoping_route = 0.0;
};

ReciprocalSquareTail reciprocal_square_tail(long long n, long long N);

/// Integral of log over (m - 1/2, m + 1/2) minus log m, in closed form.
/// Close to -1/(24 m^2) for large m.
double log_strip_remainder(long long m);

/// Sum of the strip remainders for m = 1..10^6, computed once. The terms
/// left out total at most 0.05/10^6.
double strip_constant();
inline constexpr long long kStripTerms = 1'000'000;
inline constexpr double kStripDecay = 0.05;

struct AsymptoticRecord {
  long long n = 0;
  double log_factorial_exact = 0.0;
  double approximation = 0.0;
  double abs_error = 0.0;
  double predicted_bound = 0.0;
};

/// Compensated sum of log m, m = 2..n.
double log_factorial_exact(long long n);

/// log n! ~ -strip_constant() + integral of log over (1/2, n + 1/2).
/// predicted_bound = 0.05/n + 0.05/10^6.
AsymptoticRecord log_factorial_first_expression(long long n);

/// c_1 = -strip_constant() + (1 + log 2)/2, the constant of the incomplete
/// Stirling formula in log form.
double incomplete_stirling_log_constant();

struct IncompleteStirling {
  double d_n = 0.0;  // n! / (sqrt(n) (n/e)^n)
  AsymptoticRecord record;
};

/// approximation = n log n - n + (log n)/2 + c_1; predicted_bound =
/// 0.175/n + 0.05/10^6.
IncompleteStirling incomplete_stirling(long long n);

}  // namespace newton
