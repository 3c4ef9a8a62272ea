#pragma once

#include <functional>

#include "newton/core_real.hpp"

namespace newton {

/// An integrand f together with a primitive F (F' = f on the open domain).
struct PrimitivePair {
  RealFunction integrand;
  RealFunction primitive;
  Interval domain;
};

struct IntegralResult {
  double value = 0.0;
  LimitResult lower_limit;
  LimitResult upper_limit;
};

/// Carrier for a numerically verified identity lhs = rhs (or inequality).
struct IdentityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool holds = false;

  /// holds iff |lhs - rhs| <= tolerance.
  static IdentityReport equality(double lhs, double rhs, double tolerance);
  /// holds iff lhs <= rhs + tolerance; residual is max(0, lhs - rhs).
  static IdentityReport at_most(double lhs, double rhs, double tolerance);
};

enum class Orientation { forward, reversed };

/// 1e-8 for bounded intervals, 1e-6 when an endpoint is infinite.
double default_tolerance(const Interval& domain) noexcept;

/// F(hi-) - F(lo+). The reversed orientation returns the exact negation.
IntegralResult newton_integral(const PrimitivePair& p, const LimitConfig& cfg = {},
                               Orientation orientation = Orientation::forward);

/// Points c_k -> hi used to approach the upper endpoint in Hake's theorem.
using TruncationSchedule = std::function<double(int)>;

/// Default truncation toward hi: 2^k (shifted past lo) for +inf, otherwise
/// hi - (hi - lo) / 2^(k+1).
TruncationSchedule default_truncation(const Interval& domain);

/// Compares the integral over the full domain with the limit of integrals
/// over (lo, c_k) as c_k -> hi.
IdentityReport hake_check(const PrimitivePair& p, const LimitConfig& cfg = {},
                          TruncationSchedule schedule = {});

/// (alpha f + beta g, alpha F + beta G). Throws DomainMismatch.
PrimitivePair linear_combine(const PrimitivePair& p, const PrimitivePair& q, double alpha, double beta);

struct SplitReport {
  IntegralResult left;
  IntegralResult right;
  IdentityReport additivity;
};

/// Integrals over (lo, c) and (c, hi) and their sum against the whole.
/// Throws SplitPointOutsideInterval.
SplitReport split_additive(const PrimitivePair& p, double c, const LimitConfig& cfg = {});

inline constexpr int kDefaultSampleCount = 257;

/// lhs = integral of p, rhs = integral of q, holds iff lhs <= rhs + tol.
/// Throws PointwiseOrderViolated when a sampled f(x) exceeds g(x).
IdentityReport monotone_compare(const PrimitivePair& p, const PrimitivePair& q,
                                int sample_count = kDefaultSampleCount, const LimitConfig& cfg = {});

enum class BoundSide { upper, lower };

/// integral <= bound*(b - a) (upper) or >= (lower) on a bounded interval.
/// Throws InfiniteInterval, or PointwiseOrderViolated if the bound fails at a sample.
IdentityReport ml_bound_check(const PrimitivePair& p, double bound, BoundSide side,
                              int sample_count = kDefaultSampleCount, const LimitConfig& cfg = {});

struct ByPartsInput {
  RealFunction F;  // primitive of f
  RealFunction f;
  RealFunction G;  // primitive of g
  RealFunction g;
  Interval domain;
  RealFunction fG_primitive;
  RealFunction Fg_primitive;
};

/// lhs = integral of fG, rhs = [(FG)(hi-) - (FG)(lo+)] - integral of Fg.
IdentityReport integrate_by_parts(const ByPartsInput& in, const LimitConfig& cfg = {});

/// lhs = integral over source of (f o g) g' via the primitive F o g;
/// rhs = integral of p, negated when g reverses orientation. Throws
/// RangeViolation when a sampled g(t) leaves p.domain.
IdentityReport substitute(const PrimitivePair& p, const RealFunction& g, const RealFunction& g_prime,
                          const Interval& source, bool flipped, const LimitConfig& cfg = {});

/// Largest relative mismatch |(F(x+h) - F(x-h))/2h - f(x)| / max(1, |f(x)|)
/// over sampled interior points.
double primitive_mismatch(const RealFunction& primitive, const RealFunction& integrand, const Interval& domain,
                          int sample_count = kDefaultSampleCount);

/// Throws PrimitiveMismatch when primitive_mismatch exceeds tolerance.
void require_primitive(const RealFunction& primitive, const RealFunction& integrand, const Interval& domain,
                       double tolerance = 1e-5, int sample_count = kDefaultSampleCount);

/// x^n e^{-x}, evaluated as exp(n log x - x).
RealFunction gamma_kernel(int n);

/// Closed-form primitive of x^n e^{-x}: -e^{-x} * sum_{k=0..n} (n!/k!) x^k.
/// Horner form while n <= 170 and log(n!) + |x| <= 700 (the coefficients are
/// exact integers up to n = 22), log-space terms otherwise.
RealFunction gamma_primitive(int n);

/// (x^n e^{-x}, gamma_primitive(n)) on (0, +inf).
PrimitivePair gamma_pair(int n);

}  // namespace newton
