#include "newton/newton_engine.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <vector>

#include "newton/compensated_sum.hpp"

namespace newton {

IdentityReport IdentityReport::equality(double lhs, double rhs, double tolerance) {
  const double residual = std::fabs(lhs - rhs);
  return {lhs, rhs, residual, tolerance, residual <= tolerance};
}

IdentityReport IdentityReport::at_most(double lhs, double rhs, double tolerance) {
  const double residual = std::max(0.0, lhs - rhs);
  return {lhs, rhs, residual, tolerance, lhs <= rhs + tolerance};
}

double default_tolerance(const Interval& domain) noexcept { return domain.is_finite() ? 1e-8 : 1e-6; }

IntegralResult newton_integral(const PrimitivePair& p, const LimitConfig& cfg, Orientation orientation) {
  // Keep the first samples inside short intervals.
  LimitConfig inside = cfg;
  if (p.domain.is_finite()) inside.start_offset = std::min(cfg.start_offset, 0.5 * p.domain.length());
  IntegralResult r;
  r.lower_limit = endpoint_limit(p.primitive, p.domain.lo(), Side::right, inside);
  r.upper_limit = endpoint_limit(p.primitive, p.domain.hi(), Side::left, inside);
  r.value = r.upper_limit.value - r.lower_limit.value;
  if (orientation == Orientation::reversed) r.value = -r.value;
  return r;
}

TruncationSchedule default_truncation(const Interval& domain) {
  const auto& lo = domain.lo();
  const auto& hi = domain.hi();
  if (!hi.is_finite()) {
    const double base = lo.is_finite() ? lo.value() : 0.0;
    return [base](int k) { return base + std::ldexp(1.0, k); };
  }
  const double b = hi.value();
  if (!lo.is_finite()) return [b](int k) { return b - std::ldexp(1.0, -k); };
  const double a = lo.value();
  return [a, b](int k) { return b - (b - a) * std::ldexp(1.0, -(k + 1)); };
}

IdentityReport hake_check(const PrimitivePair& p, const LimitConfig& cfg, TruncationSchedule schedule) {
  if (!schedule) schedule = default_truncation(p.domain);
  const IntegralResult whole = newton_integral(p, cfg);

  const LimitResult lower = whole.lower_limit;
  const auto partial = [&](int k) {
    double c = schedule(k);
    // Schedules toward a finite end round onto it after ~53 halvings; the
    // last interior double stands in from there on.
    if (p.domain.hi().is_finite() && c == p.domain.hi().value()) c = std::nextafter(c, -INFINITY);
    if (!p.domain.contains(c)) {
      std::ostringstream os;
      os << "truncation point " << c << " outside " << to_string(p.domain);
      throw Error(ErrorCode::invalid_argument, os.str());
    }
    // (N) integral over (lo, c) = F(c-) - F(lo+).
    LimitConfig inside = cfg;
    if (p.domain.lo().is_finite()) inside.start_offset = std::min(cfg.start_offset, 0.5 * (c - p.domain.lo().value()));
    return one_sided_limit(p.primitive, c, Side::left, inside).value - lower.value;
  };
  const LimitResult truncated = limit_of_sequence(partial, cfg);
  return IdentityReport::equality(whole.value, truncated.value, default_tolerance(p.domain));
}

PrimitivePair linear_combine(const PrimitivePair& p, const PrimitivePair& q, double alpha, double beta) {
  if (!(p.domain == q.domain)) {
    throw Error(ErrorCode::domain_mismatch, to_string(p.domain) + " vs " + to_string(q.domain));
  }
  auto f = p.integrand, g = q.integrand, F = p.primitive, G = q.primitive;
  return PrimitivePair{
      RealFunction([=](double x) { return alpha * f(x) + beta * g(x); }),
      RealFunction([=](double x) { return alpha * F(x) + beta * G(x); }),
      p.domain,
  };
}

SplitReport split_additive(const PrimitivePair& p, double c, const LimitConfig& cfg) {
  if (!p.domain.contains(c)) {
    std::ostringstream os;
    os << c << " is not interior to " << to_string(p.domain);
    throw Error(ErrorCode::split_point_outside_interval, os.str());
  }
  const auto point = ExtendedReal::finite(c);
  SplitReport r;
  r.left = newton_integral({p.integrand, p.primitive, Interval(p.domain.lo(), point)}, cfg);
  r.right = newton_integral({p.integrand, p.primitive, Interval(point, p.domain.hi())}, cfg);
  const IntegralResult whole = newton_integral(p, cfg);
  r.additivity = IdentityReport::equality(r.left.value + r.right.value, whole.value, default_tolerance(p.domain));
  return r;
}

IdentityReport monotone_compare(const PrimitivePair& p, const PrimitivePair& q, int sample_count,
                                const LimitConfig& cfg) {
  if (!(p.domain == q.domain)) {
    throw Error(ErrorCode::domain_mismatch, to_string(p.domain) + " vs " + to_string(q.domain));
  }
  for (double x : sample_points(p.domain, sample_count)) {
    const double fx = p.integrand(x);
    const double gx = q.integrand(x);
    if (fx > gx) {
      std::ostringstream os;
      os.precision(17);
      os << "f(" << x << ") = " << fx << " > g(x) = " << gx;
      throw Error(ErrorCode::pointwise_order_violated, os.str());
    }
  }
  const double lhs = newton_integral(p, cfg).value;
  const double rhs = newton_integral(q, cfg).value;
  return IdentityReport::at_most(lhs, rhs, default_tolerance(p.domain));
}

IdentityReport ml_bound_check(const PrimitivePair& p, double bound, BoundSide side, int sample_count,
                              const LimitConfig& cfg) {
  if (!p.domain.is_finite()) {
    throw Error(ErrorCode::infinite_interval, "ML bound needs a bounded interval, got " + to_string(p.domain));
  }
  for (double x : sample_points(p.domain, sample_count)) {
    const double fx = p.integrand(x);
    const bool ok = side == BoundSide::upper ? fx <= bound : fx >= bound;
    if (!ok) {
      std::ostringstream os;
      os.precision(17);
      os << "f(" << x << ") = " << fx << " violates the pointwise bound " << bound;
      throw Error(ErrorCode::pointwise_order_violated, os.str());
    }
  }
  const double integral = newton_integral(p, cfg).value;
  const double ml = bound * p.domain.length();
  const double tol = default_tolerance(p.domain);
  if (side == BoundSide::upper) return IdentityReport::at_most(integral, ml, tol);
  IdentityReport r = IdentityReport::at_most(ml, integral, tol);
  std::swap(r.lhs, r.rhs);
  return r;
}

double primitive_mismatch(const RealFunction& primitive, const RealFunction& integrand, const Interval& domain,
                          int sample_count) {
  double worst = 0.0;
  for (double x : sample_points(domain, sample_count)) {
    double h = 1e-5 * std::max(1.0, std::fabs(x));
    if (domain.lo().is_finite()) h = std::min(h, 0.5 * (x - domain.lo().value()));
    if (domain.hi().is_finite()) h = std::min(h, 0.5 * (domain.hi().value() - x));
    if (!(h > 0.0)) continue;
    const double fd = (primitive(x + h) - primitive(x - h)) / (2.0 * h);
    const double fx = integrand(x);
    // Rounding in the difference quotient scales like eps * |F| / h.
    const double noise = 1e-15 * std::max(std::fabs(primitive(x + h)), std::fabs(primitive(x - h))) / h;
    const double scale = std::max({1.0, std::fabs(fx), noise * 1e6});
    if (!std::isfinite(fd) || !std::isfinite(fx)) continue;
    worst = std::max(worst, std::fabs(fd - fx) / scale);
  }
  return worst;
}

void require_primitive(const RealFunction& primitive, const RealFunction& integrand, const Interval& domain,
                       double tolerance, int sample_count) {
  const double m = primitive_mismatch(primitive, integrand, domain, sample_count);
  if (m > tolerance) {
    std::ostringstream os;
    os << "finite-difference derivative of " << (primitive.label().empty() ? "primitive" : primitive.label())
       << " misses the integrand by " << m << " on " << to_string(domain);
    throw Error(ErrorCode::primitive_mismatch, os.str());
  }
}

IdentityReport integrate_by_parts(const ByPartsInput& in, const LimitConfig& cfg) {
  require_primitive(in.F, in.f, in.domain);
  require_primitive(in.G, in.g, in.domain);
  auto f = in.f, G = in.G, F = in.F, g = in.g;
  const RealFunction fG([=](double x) { return f(x) * G(x); });
  const RealFunction Fg([=](double x) { return F(x) * g(x); });
  const RealFunction FG([=](double x) { return F(x) * G(x); });
  require_primitive(in.fG_primitive, fG, in.domain);
  require_primitive(in.Fg_primitive, Fg, in.domain);

  const double lhs = newton_integral({fG, in.fG_primitive, in.domain}, cfg).value;
  const double boundary = newton_integral({RealFunction{}, FG, in.domain}, cfg).value;
  const double third = newton_integral({Fg, in.Fg_primitive, in.domain}, cfg).value;
  return IdentityReport::equality(lhs, boundary - third, default_tolerance(in.domain));
}

IdentityReport substitute(const PrimitivePair& p, const RealFunction& g, const RealFunction& g_prime,
                          const Interval& source, bool flipped, const LimitConfig& cfg) {
  for (double t : sample_points(source, kDefaultSampleCount)) {
    const double gt = g(t);
    if (!p.domain.contains(gt)) {
      std::ostringstream os;
      os.precision(17);
      os << "g(" << t << ") = " << gt << " leaves " << to_string(p.domain);
      throw Error(ErrorCode::range_violation, os.str());
    }
  }
  auto f = p.integrand, F = p.primitive;
  const PrimitivePair pulled{
      RealFunction([=](double t) { return f(g(t)) * g_prime(t); }),
      RealFunction([=](double t) { return F(g(t)); }),
      source,
  };
  const double lhs = newton_integral(pulled, cfg).value;
  const double rhs = newton_integral(p, cfg, flipped ? Orientation::reversed : Orientation::forward).value;
  const double tol = std::max(default_tolerance(source), default_tolerance(p.domain));
  return IdentityReport::equality(lhs, rhs, tol);
}

RealFunction gamma_kernel(int n) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "gamma kernel needs n >= 0");
  return RealFunction(
      [n](double x) {
        if (n == 0) return std::exp(-x);
        if (x > 0.0) return std::exp(n * std::log(x) - x);
        return std::pow(x, n) * std::exp(-x);
      },
      "x^" + std::to_string(n) + " e^-x");
}

RealFunction gamma_primitive(int n) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "gamma primitive needs n >= 0");
  // n!/k! is an exact double up to n = 22 and finite up to n = 170. Horner
  // runs while its partial sums stay below e^700.
  constexpr int kMaxCoefficients = 170;
  constexpr double kHornerLimit = 700.0;

  // coeff[k] = n!/k!
  auto coeff = std::make_shared<std::vector<double>>(static_cast<std::size_t>(n) + 1, 1.0);
  for (int k = n - 1; k >= 0; --k) (*coeff)[k] = (*coeff)[k + 1] * static_cast<double>(k + 1);
  // log(n!/k!)
  auto log_coeff = std::make_shared<std::vector<double>>(static_cast<std::size_t>(n) + 1, 0.0);
  {
    CompensatedSum acc;
    for (int k = n - 1; k >= 0; --k) {
      acc += std::log(static_cast<double>(k + 1));
      (*log_coeff)[k] = acc.value();
    }
  }

  return RealFunction(
      [n, coeff, log_coeff](double x) {
        if (std::isnan(x)) return x;
        const bool horner = n <= kMaxCoefficients && std::fabs(x) + (*log_coeff)[0] <= kHornerLimit;
        if (horner) {
          double poly = (*coeff)[n];
          for (int k = n - 1; k >= 0; --k) poly = poly * x + (*coeff)[k];
          return -std::exp(-x) * poly;
        }
        if (x <= 0.0) return -std::numeric_limits<double>::infinity();
        // Each term in log space; rounding of the exponent costs about
        // log(n!) ulps per term.
        const double lx = std::log(x);
        CompensatedSum s;
        for (int k = 0; k <= n; ++k) s += std::exp((*log_coeff)[k] + k * lx - x);
        return -s.value();
      },
      "gamma primitive n=" + std::to_string(n));
}

PrimitivePair gamma_pair(int n) {
  return {gamma_kernel(n), gamma_primitive(n), Interval(ExtendedReal::finite(0.0), ExtendedReal::pos_infinity())};
}

}  // namespace newton
