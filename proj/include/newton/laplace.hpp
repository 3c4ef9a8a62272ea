#pragma once

#include <optional>

#include "newton/fubini.hpp"
#include "newton/newton_engine.hpp"
#include "newton/sum_asymptotics.hpp"

namespace newton {

inline constexpr double kDefaultEpsilon = 0.3;

struct LaplaceConfig {
  double epsilon = kDefaultEpsilon;
  long long n = 1;

  /// n^{-1/2 + epsilon/3}.
  double delta() const;
  /// Throws InvalidArgument unless 0 < epsilon < 1/2, n >= 1, and delta < 1
  /// whenever n > 1.
  void validate() const;
};

enum class GammaMode { exact_primitive, numeric };

struct GammaResult {
  double value = 0.0;
  double log_value = 0.0;
  /// Numeric mode: bound on the integral beyond the truncation point.
  double tail_bound = 0.0;
  double truncation = 0.0;
};

/// n! as the Newton integral of x^n e^{-x} over (0, +inf). Exact mode uses
/// the closed-form primitive; numeric mode builds a primitive on
/// (0, n + 40 sqrt(n+1)) and reports the tail bound T^n e^{-T} / (1 - n/T).
/// Throws Overflow above n = 170 (the message carries log n!).
GammaResult gamma_integral(int n, GammaMode mode);

/// log n! through I_0 = 1 and the by-parts chain I_k = k I_{k-1}.
double log_gamma_integral(long long n);

struct CenteredIntegrand {
  RealFunction f;  // (e^{-y} (1 + y))^n on [-1, +inf)
  long long n = 0;
  /// Sampled: increasing on [-1, 0], decreasing on [0, +inf), f(0) = 1.
  bool shape_verified = false;
};

CenteredIntegrand centered_integrand(long long n);

/// Big-O constants of the concentration step.
struct BudgetConstants {
  double tail = 10.0;       // I1, I3, I4 <= tail * e^{-n delta^2 / 2}
  double correction = 1.0;  // |r| <= correction * n delta^3
};

struct ConcentrationBudget {
  double I1 = 0.0;  // (-1, -delta)
  double I2 = 0.0;  // (-delta, delta)
  double I3 = 0.0;  // (delta, 4)
  double I4 = 0.0;  // (4, +inf)
  double I4_majorant = 0.0;  // 2 e^{-2n} / n
  /// Integral of e^{-n y^2 / 2} over (-delta, delta).
  double main_term = 0.0;
  double r = 0.0;  // I2 / main_term - 1
  double rel_correction_bound = 0.0;  // n delta^3
  double tail_bound = 0.0;            // e^{-n delta^2 / 2}
  /// n! / (e^{-n} n^{n+1}) from the exact log factorial.
  double full_integral = 0.0;
};

/// Throws InvalidArgument unless n delta^3 < 1, BudgetViolation when a piece
/// exceeds its bound under `constants`.
ConcentrationBudget concentrate(const LaplaceConfig& cfg, const BudgetConstants& constants = {});

/// The measured ratios at cfg: max(I1, I3, I4) / e^{-n delta^2/2} and
/// |r| / (n delta^3). Used to pin BudgetConstants at the smallest n.
BudgetConstants calibrate_budget(const LaplaceConfig& cfg);

struct GaussReduction {
  /// lhs: integral of e^{-n y^2/2} over (-delta, delta);
  /// rhs: sqrt(2/n) * gauss_integral(); tolerance: tail * e^{-n delta^2/2}.
  IdentityReport identity;
  /// Integral of e^{-t^2} over (delta sqrt(n/2), +inf).
  double i6 = 0.0;
  /// |lhs - sqrt(2/n) (gauss - 2 i6)|.
  double corrected_residual = 0.0;
};

GaussReduction reduce_to_gauss(const LaplaceConfig& cfg, double tail_constant = BudgetConstants{}.tail);

struct GaussReport {
  double i7_squared = 0.0;  // pi/4 through the arctan primitive
  double half_line = 0.0;   // I7 over (0, +inf)
  double negative_half_line = 0.0;  // over (-inf, 0) by the flip t -> -t
  double value = 0.0;       // full line, 2 I7
  /// The Fubini exchange at a finite truncation, when requested.
  std::optional<IteratedIntegralReport> exchange;
};

/// sqrt(pi) through (integral over (0, +inf) of e^{-t^2})^2 = pi/4.
double gauss_integral();
/// Same chain with the pieces exposed. certify_b > 0 also runs the Fubini
/// exchange at truncation certify_b with a coarse build config.
GaussReport gauss_integral_report(double certify_b = 0.0);

/// log(e^{-n} n^{n+1} sqrt(2/n) gauss_integral()), error against log n!,
/// predicted_bound = C n^{-1/2 + epsilon}. C defaults to the error at n = 1.
AsymptoticRecord stirling_via_laplace(long long n, double epsilon = kDefaultEpsilon,
                                      std::optional<double> constant = std::nullopt);

/// The error of the main term at n = 1, the default constant above.
double laplace_error_constant();

}  // namespace newton
