#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "newton/core_real.hpp"
#include "newton/primitive_builder.hpp"

namespace newton {

struct BivariateFunction {
  std::function<double(double, double)> fn;
  std::string label;

  double operator()(double x, double y) const { return fn(x, y); }
};

/// xy: inner integral over y, outer over x. yx: the other way round.
enum class Order { xy, yx };

/// Iterated integral over x_range x y_range. Inner integrals are built once
/// per outer node; nodes are shared across outer refinement levels and
/// evaluated in parallel.
double iterated_rectangle(const BivariateFunction& f, const Interval& x_range, const Interval& y_range, Order order,
                          const BuildConfig& cfg = {});

/// Constants of the tail estimates for f(x, z) = x e^{-x^2 (1 + z^2)} and the
/// two tail bounds at truncation b.
struct TailBound {
  double c_gauss = 0.0;  // integral of e^{-x^2} over (0, +inf)
  double c0 = 0.0;       // max_{x >= 1} x^3 e^{-x^2}
  double c1 = 0.0;       // max_{x >= 0} x e^{-x^2}
  double c2 = 0.0;       // power of two with I(z) < c2 z^{-4/3} on the z grid
  double bound_A = 0.0;
  double bound_B = 0.0;
};

struct TailConstants {
  double c_gauss;
  double c0;
  double c1;
  double c2;
};

/// Computed on first use by 1-D maximization and integration, then cached.
const TailConstants& tail_constants();
TailBound tail_bound(double b);

struct IteratedIntegralReport {
  double value_xy = 0.0;
  double value_yx = 0.0;
  double discrepancy = 0.0;
  double truncation = 0.0;
  std::optional<TailBound> tail_certificate;
  /// Full iterated value when known (A = c^2 for the special case).
  double limit_value = 0.0;
  /// Analytic bound on the distance between the truncated and full values.
  double tail_estimate = 0.0;
  bool holds = false;
};

/// f(x, z) = x e^{-x^2} e^{-x^2 z^2}.
BivariateFunction gauss_kernel();

/// A(b) (inner over z) and B(b) (inner over x) on [0, b]^2, A = c^2, and the
/// tail certificate. holds iff |A - A(b)| <= bound_A and
/// |A - B(b)| <= bound_A + bound_B. Throws InvalidArgument for b < 1.
IteratedIntegralReport special_infinite_fubini(double b, const BuildConfig& cfg = {});

/// Truncation points T_k for the quadrant, increasing.
using TruncationPoints = std::vector<double>;

struct DecayBoundedReport {
  IteratedIntegralReport final;
  /// One entry per truncation point, in order.
  std::vector<IteratedIntegralReport> history;
};

/// Both iterated integrals over [0, T]^2 for each T, plus the exterior tail
/// c * integral of max(x, y)^{-3} outside the square, which is 2c/T. Throws
/// DecayViolation when a sample with max(x, y) >= 1 breaks
/// |f| <= c max(x, y)^{-3}.
DecayBoundedReport decay_bounded_fubini(const BivariateFunction& f, double c, const TruncationPoints& schedule,
                                        const BuildConfig& cfg = {});

/// Sampled check of |f(x, y)| <= c max(x, y)^{-3} on max(x, y) >= 1.
/// Throws DecayViolation with the offending point.
void require_decay(const BivariateFunction& f, double c);

/// f(x, y) = exp(-((y - 1) / w(x))^2), w(x) = e^{-x}/2, on x >= 0, y >= 0.
/// Positive and continuous, identically 1 on y = 1, and each x-section has
/// y-integral below w(x) sqrt(pi).
BivariateFunction counterexample_family();

struct CounterexampleReport {
  double X = 0.0;
  /// Integral over x in (0, X) of J(x) = integral over y in (0, +inf).
  double order_xy_value = 0.0;
  /// Integral over x in (0, X) of f(x, 1); grows like X.
  double order_yx_partial = 0.0;
  /// Integral over x in (0, X) of f(x, 2); stays bounded.
  double section_y2 = 0.0;
  bool divergence_witness = false;  // order_yx_partial >= 0.9 X
};

CounterexampleReport asymmetry_counterexample(double X, const BuildConfig& cfg = {});

/// One member of the fixed rectangle battery.
struct RectangleCase {
  std::string label;
  BivariateFunction f;
  Interval x_range;
  Interval y_range;
};

/// Ten continuous functions on rectangles drawn from a seeded generator.
std::vector<RectangleCase> rectangle_battery(std::uint64_t seed);

struct RectangleResult {
  std::string label;
  double value_xy = 0.0;
  double value_yx = 0.0;
  double discrepancy = 0.0;
};

RectangleResult run_rectangle_case(const RectangleCase& c, const BuildConfig& cfg = {});

}  // namespace newton
