#pragma once

#include <compare>
#include <functional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "newton/error.hpp"

namespace newton {

/// A point of the extended real line: a finite binary64 value or one of the
/// two infinities. Finite values are never NaN.
class ExtendedReal {
 public:
  enum class Kind { neg_infinity, finite, pos_infinity };

  static ExtendedReal finite(double value);
  static ExtendedReal neg_infinity() noexcept { return ExtendedReal(Kind::neg_infinity, 0.0); }
  static ExtendedReal pos_infinity() noexcept { return ExtendedReal(Kind::pos_infinity, 0.0); }
  /// Maps IEEE infinities onto the corresponding tags; rejects NaN.
  static ExtendedReal from_double(double value);

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::finite; }
  /// Finite value; throws for the infinities.
  double value() const;
  /// IEEE representation (infinities become +-inf).
  double as_double() const noexcept;

  std::strong_ordering operator<=>(const ExtendedReal& other) const noexcept;
  bool operator==(const ExtendedReal& other) const noexcept = default;

 private:
  ExtendedReal(Kind kind, double value) noexcept : kind_(kind), value_(value) {}

  Kind kind_;
  double value_;
};

std::string to_string(const ExtendedReal& x);

/// Open interval (lo, hi) with lo < hi in the extended order.
class Interval {
 public:
  Interval(ExtendedReal lo, ExtendedReal hi);
  Interval(double lo, double hi) : Interval(ExtendedReal::from_double(lo), ExtendedReal::from_double(hi)) {}

  const ExtendedReal& lo() const noexcept { return lo_; }
  const ExtendedReal& hi() const noexcept { return hi_; }
  bool is_finite() const noexcept { return lo_.is_finite() && hi_.is_finite(); }
  /// hi - lo; throws InfiniteInterval for unbounded intervals.
  double length() const;
  bool contains(double x) const noexcept;

  bool operator==(const Interval& other) const noexcept = default;

 private:
  ExtendedReal lo_;
  ExtendedReal hi_;
};

std::string to_string(const Interval& interval);

/// Pure real function of one variable with an optional label.
class RealFunction {
 public:
  using Signature = double(double);

  RealFunction() = default;
  template <class F>
    requires std::is_invocable_r_v<double, F, double> &&
             (!std::is_same_v<std::remove_cvref_t<F>, RealFunction>)
  RealFunction(F&& fn, std::string label = {})  // NOLINT(google-explicit-constructor)
      : fn_(std::forward<F>(fn)), label_(std::move(label)) {}

  double operator()(double x) const { return fn_(x); }
  explicit operator bool() const noexcept { return static_cast<bool>(fn_); }
  const std::string& label() const noexcept { return label_; }

 private:
  std::function<Signature> fn_;
  std::string label_;
};

/// Evaluation points k = 0, 1, ... of a sequence tending to +infinity.
using InfinitySchedule = std::function<double(int)>;

/// start * ratio^k.
InfinitySchedule geometric_schedule(double start, double ratio);

struct LimitConfig {
  double approach_factor = 4.0;
  double start_offset = 1e-1;
  InfinitySchedule infinity_schedule = geometric_schedule(1.0, 2.0);
  double stall_tolerance = 1e-10;
  int max_steps = 60;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

/// Stall tolerance 1e-15: the approach runs until successive values agree to
/// the last few bits, which for a primitive continuous at the endpoint means
/// the endpoint value itself.
LimitConfig tight_limits();

struct LimitResult {
  double value = 0.0;
  bool converged = false;
  int steps_used = 0;
  /// Last successive difference, scaled by max(1, |value|).
  double last_delta = 0.0;
};

enum class Side { left, right };
enum class Direction { pos, neg };

/// Limit of a sequence given term by term. Stops once three consecutive
/// scaled differences |v_k - v_{k-1}| / max(1, |v_k|) fall below the stall
/// tolerance. Throws NonConvergent when max_steps is reached first and
/// EvaluationFailure on a NaN or infinite term.
LimitResult limit_of_sequence(const std::function<double(int)>& term, const LimitConfig& cfg);

/// F(endpoint-) or F(endpoint+) sampled at endpoint -+ start_offset / factor^k.
/// f is never evaluated at the endpoint itself.
LimitResult one_sided_limit(const RealFunction& f, double endpoint, Side side, const LimitConfig& cfg = {});

/// F(+inf-) or F(-inf+) sampled along the infinity schedule.
LimitResult limit_at_infinity(const RealFunction& f, Direction sign, const LimitConfig& cfg = {});

/// One-sided limit toward an extended endpoint: left limit for an upper
/// endpoint, right limit for a lower one.
LimitResult endpoint_limit(const RealFunction& f, const ExtendedReal& endpoint, Side side,
                           const LimitConfig& cfg = {});

/// Chebyshev-distributed interior points of an interval. Unbounded ends are
/// reached through s/(1-s) (half lines) or tan-like maps (whole line).
std::vector<double> sample_points(const Interval& interval, int count);

}  // namespace newton
