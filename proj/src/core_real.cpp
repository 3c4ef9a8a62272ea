#include "newton/core_real.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace newton {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::non_convergent: return "NonConvergent";
    case ErrorCode::evaluation_failure: return "EvaluationFailure";
    case ErrorCode::domain_mismatch: return "DomainMismatch";
    case ErrorCode::split_point_outside_interval: return "SplitPointOutsideInterval";
    case ErrorCode::pointwise_order_violated: return "PointwiseOrderViolated";
    case ErrorCode::infinite_interval: return "InfiniteInterval";
    case ErrorCode::range_violation: return "RangeViolation";
    case ErrorCode::primitive_mismatch: return "PrimitiveMismatch";
    case ErrorCode::refinement_exhausted: return "RefinementExhausted";
    case ErrorCode::out_of_domain: return "OutOfDomain";
    case ErrorCode::decay_violation: return "DecayViolation";
    case ErrorCode::not_monotone: return "NotMonotone";
    case ErrorCode::constant_function: return "ConstantFunction";
    case ErrorCode::budget_violation: return "BudgetViolation";
    case ErrorCode::overflow: return "Overflow";
    case ErrorCode::unknown_function: return "UnknownFunction";
    case ErrorCode::invalid_format: return "InvalidFormat";
  }
  return "Unknown";
}

// ExtendedReal ---------------------------------------------------------------

ExtendedReal ExtendedReal::finite(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::invalid_argument, "finite extended real requires a finite value");
  }
  return ExtendedReal(Kind::finite, value);
}

ExtendedReal ExtendedReal::from_double(double value) {
  if (std::isnan(value)) throw Error(ErrorCode::invalid_argument, "NaN is not an extended real");
  if (value == std::numeric_limits<double>::infinity()) return pos_infinity();
  if (value == -std::numeric_limits<double>::infinity()) return neg_infinity();
  return ExtendedReal(Kind::finite, value);
}

double ExtendedReal::value() const {
  if (!is_finite()) throw Error(ErrorCode::infinite_interval, "value() of an infinite extended real");
  return value_;
}

double ExtendedReal::as_double() const noexcept {
  switch (kind_) {
    case Kind::neg_infinity: return -std::numeric_limits<double>::infinity();
    case Kind::pos_infinity: return std::numeric_limits<double>::infinity();
    case Kind::finite: break;
  }
  return value_;
}

std::strong_ordering ExtendedReal::operator<=>(const ExtendedReal& other) const noexcept {
  if (kind_ != other.kind_) return static_cast<int>(kind_) <=> static_cast<int>(other.kind_);
  if (kind_ != Kind::finite) return std::strong_ordering::equal;
  if (value_ < other.value_) return std::strong_ordering::less;
  if (value_ > other.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const ExtendedReal& x) {
  switch (x.kind()) {
    case ExtendedReal::Kind::neg_infinity: return "-inf";
    case ExtendedReal::Kind::pos_infinity: return "+inf";
    case ExtendedReal::Kind::finite: break;
  }
  std::ostringstream os;
  os.precision(17);
  os << x.value();
  return os.str();
}

// Interval -------------------------------------------------------------------

Interval::Interval(ExtendedReal lo, ExtendedReal hi) : lo_(lo), hi_(hi) {
  if (!(lo_ < hi_)) {
    throw Error(ErrorCode::invalid_argument, "interval requires lo < hi, got (" + to_string(lo_) + ", " +
                                                 to_string(hi_) + ")");
  }
}

double Interval::length() const {
  if (!is_finite()) throw Error(ErrorCode::infinite_interval, "length of " + to_string(*this));
  return hi_.value() - lo_.value();
}

bool Interval::contains(double x) const noexcept {
  const auto p = ExtendedReal::from_double(x);
  return lo_ < p && p < hi_;
}

std::string to_string(const Interval& interval) {
  return "(" + to_string(interval.lo()) + ", " + to_string(interval.hi()) + ")";
}

// Limits ---------------------------------------------------------------------

InfinitySchedule geometric_schedule(double start, double ratio) {
  return [start, ratio](int k) { return start * std::pow(ratio, k); };
}

void LimitConfig::validate() const {
  if (!(approach_factor > 1.0)) throw Error(ErrorCode::invalid_argument, "approach_factor must exceed 1");
  if (!(start_offset > 0.0)) throw Error(ErrorCode::invalid_argument, "start_offset must be positive");
  if (!(stall_tolerance > 0.0)) throw Error(ErrorCode::invalid_argument, "stall_tolerance must be positive");
  if (max_steps < 3) throw Error(ErrorCode::invalid_argument, "max_steps must be at least 3");
  if (!infinity_schedule) throw Error(ErrorCode::invalid_argument, "infinity_schedule is empty");
}

LimitConfig tight_limits() {
  LimitConfig cfg;
  cfg.stall_tolerance = 1e-15;
  return cfg;
}

LimitResult limit_of_sequence(const std::function<double(int)>& term, const LimitConfig& cfg) {
  cfg.validate();
  constexpr int kStallRun = 3;

  LimitResult result;
  double previous = 0.0;
  int quiet = 0;
  for (int k = 0; k < cfg.max_steps; ++k) {
    const double v = term(k);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "term " << k << " evaluated to " << v;
      throw Error(ErrorCode::evaluation_failure, os.str());
    }
    result.steps_used = k + 1;
    result.value = v;
    if (k > 0) {
      result.last_delta = std::fabs(v - previous) / std::max(1.0, std::fabs(v));
      quiet = result.last_delta <= cfg.stall_tolerance ? quiet + 1 : 0;
      if (quiet == kStallRun) {
        result.converged = true;
        return result;
      }
    }
    previous = v;
  }
  std::ostringstream os;
  os.precision(17);
  os << "no stall after " << cfg.max_steps << " steps; last value " << result.value << ", last delta "
     << result.last_delta;
  throw Error(ErrorCode::non_convergent, os.str());
}

LimitResult one_sided_limit(const RealFunction& f, double endpoint, Side side, const LimitConfig& cfg) {
  const double sign = side == Side::left ? -1.0 : 1.0;
  // Once the offset drops below half an ulp the sample rounds onto the
  // endpoint; the neighbouring double on the approach side replaces it.
  const double nearest = std::nextafter(endpoint, sign * INFINITY);
  return limit_of_sequence(
      [&](int k) {
        const double x = endpoint + sign * cfg.start_offset / std::pow(cfg.approach_factor, k);
        return f(x == endpoint ? nearest : x);
      },
      cfg);
}

LimitResult limit_at_infinity(const RealFunction& f, Direction sign, const LimitConfig& cfg) {
  const double s = sign == Direction::pos ? 1.0 : -1.0;
  return limit_of_sequence([&](int k) { return f(s * cfg.infinity_schedule(k)); }, cfg);
}

LimitResult endpoint_limit(const RealFunction& f, const ExtendedReal& endpoint, Side side, const LimitConfig& cfg) {
  switch (endpoint.kind()) {
    case ExtendedReal::Kind::pos_infinity: return limit_at_infinity(f, Direction::pos, cfg);
    case ExtendedReal::Kind::neg_infinity: return limit_at_infinity(f, Direction::neg, cfg);
    case ExtendedReal::Kind::finite: break;
  }
  return one_sided_limit(f, endpoint.value(), side, cfg);
}

std::vector<double> sample_points(const Interval& interval, int count) {
  if (count < 1) throw Error(ErrorCode::invalid_argument, "sample count must be positive");
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(count));
  const bool lo_finite = interval.lo().is_finite();
  const bool hi_finite = interval.hi().is_finite();
  for (int j = 0; j < count; ++j) {
    // Chebyshev nodes of the first kind, mapped to (0, 1); never the endpoints.
    const double s = 0.5 * (1.0 - std::cos(std::numbers::pi * (j + 0.5) / count));
    double x = 0.0;
    if (lo_finite && hi_finite) {
      const double a = interval.lo().value();
      const double b = interval.hi().value();
      x = a + (b - a) * s;
    } else if (lo_finite) {
      x = interval.lo().value() + s / (1.0 - s);
    } else if (hi_finite) {
      x = interval.hi().value() - (1.0 - s) / s;
    } else {
      const double t = 2.0 * s - 1.0;
      x = t / (1.0 - t * t);
    }
    if (interval.contains(x)) points.push_back(x);
  }
  return points;
}

}  // namespace newton
