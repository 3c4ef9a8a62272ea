#include "newton/sum_asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "newton/compensated_sum.hpp"
#include "newton/newton_engine.hpp"

namespace newton {

namespace {

void require_monotone(const RealFunction& f, long long a, long long b) {
  std::vector<double> xs;
  constexpr long long kDense = 4096;
  if (b - a <= kDense) {
    for (long long n = a; n <= b; ++n) xs.push_back(static_cast<double>(n));
  } else {
    for (long long j = 0; j <= kDense; ++j) {
      xs.push_back(static_cast<double>(a) + static_cast<double>(b - a) * static_cast<double>(j) / kDense);
    }
  }
  const auto interior = sample_points(Interval(static_cast<double>(a), static_cast<double>(b)), kDefaultSampleCount);
  xs.insert(xs.end(), interior.begin(), interior.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  bool up = false, down = false;
  double prev = f(xs.front());
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double cur = f(xs[i]);
    up = up || cur > prev;
    down = down || cur < prev;
    if (up && down) {
      std::ostringstream os;
      os.precision(17);
      os << "f changes direction near x = " << xs[i] << " on [" << a << ", " << b << "]";
      throw Error(ErrorCode::not_monotone, os.str());
    }
    prev = cur;
  }
}

}  // namespace

SumIntegralReport monotone_sum_vs_integral(const RealFunction& f, const RealFunction& F, long long a, long long b) {
  if (b <= a) throw Error(ErrorCode::invalid_argument, "need a < b");
  require_monotone(f, a, b);

  SumIntegralReport r;
  r.a = a;
  r.b = b;
  CompensatedSum sum;
  for (long long n = a + 1; n <= b; ++n) sum += f(static_cast<double>(n));
  r.sum = sum.value();
  r.integral =
      newton_integral({f, F, Interval(static_cast<double>(a), static_cast<double>(b))}, tight_limits()).value;

  const double jump = f(static_cast<double>(b)) - f(static_cast<double>(a));
  if (jump == 0.0) {
    if (std::fabs(r.sum - r.integral) > 1e-9 * std::max(1.0, std::fabs(r.sum))) {
      std::ostringstream os;
      os.precision(17);
      os << "f(a) = f(b) but sum " << r.sum << " differs from integral " << r.integral;
      throw Error(ErrorCode::constant_function, os.str());
    }
    r.constant = true;
    r.theta_in_range = true;
    return r;
  }
  r.theta = (r.sum - r.integral) / jump;
  r.theta_in_range = r.theta >= -kThetaSlack && r.theta <= 1.0 + kThetaSlack;
  return r;
}

TailConstantReport tail_constant(const std::function<double(long long)>& terms, double decay_scale, long long n,
                                 long long N_max) {
  if (n < 1 || N_max < n) throw Error(ErrorCode::invalid_argument, "need 1 <= n <= N_max");
  if (!(decay_scale >= 0.0)) throw Error(ErrorCode::invalid_argument, "decay_scale must be non-negative");

  TailConstantReport r;
  r.n_used = n;
  r.remainder_bound = decay_scale / static_cast<double>(n);
  constexpr long long kExhaustive = 10'000;
  long long next_sample = 1;
  CompensatedSum total;
  for (long long m = 1; m <= N_max; ++m) {
    const double t = terms(m);
    if (m == next_sample) {
      const double md = static_cast<double>(m);
      if (!(std::fabs(t) <= decay_scale / (md * md) * (1.0 + 1e-12))) {
        std::ostringstream os;
        os.precision(17);
        os << "|terms(" << m << ")| = " << std::fabs(t) << " exceeds " << decay_scale << "/m^2";
        throw Error(ErrorCode::decay_violation, os.str());
      }
      next_sample = m < kExhaustive ? m + 1 : m + m / 64;
    }
    total += t;
    if (m == n) r.partial_sum = total.value();
  }
  r.c_estimate = total.value();
  r.holds = std::fabs(r.partial_sum - r.c_estimate) <= r.remainder_bound + decay_scale / static_cast<double>(N_max);
  return r;
}

ReciprocalSquareTail reciprocal_square_tail(long long n, long long N) {
  if (n < 1 || N <= n) throw Error(ErrorCode::invalid_argument, "need 1 <= n < N");
  ReciprocalSquareTail r;
  CompensatedSum direct, telescoped;
  for (long long m = n + 1; m <= N; ++m) {
    const double md = static_cast<double>(m);
    direct += 1.0 / (md * md);
    telescoped += 1.0 / (md - 1.0);
    telescoped -= 1.0 / md;
  }
  r.direct_sum = direct.value();
  r.telescoping_route = telescoped.value();
  const PrimitivePair inverse_square{
      RealFunction([](double x) { return 1.0 / (x * x); }),
      RealFunction([](double x) { return -1.0 / x; }),
      Interval(static_cast<double>(n), static_cast<double>(N)),
  };
  r.integral_route = newton_integral(inverse_square, tight_limits()).value;
  return r;
}

double log_strip_remainder(long long m) {
  if (m < 1) throw Error(ErrorCode::invalid_argument, "strip index must be >= 1");
  const double md = static_cast<double>(m);
  // (m+1/2)log(m+1/2) - (m-1/2)log(m-1/2) - 1 - log m, regrouped so the
  // O(1) parts cancel exactly.
  return md * std::log1p(1.0 / (md - 0.5)) + 0.5 * std::log1p(-0.25 / (md * md)) - 1.0;
}

double strip_constant() {
  static const double value = [] {
    CompensatedSum acc;
    for (long long m = 1; m <= kStripTerms; ++m) acc += log_strip_remainder(m);
    return acc.value();
  }();
  return value;
}

double log_factorial_exact(long long n) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "log factorial of a negative integer");
  return log_factorial(n);
}

AsymptoticRecord log_factorial_first_expression(long long n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "n must be >= 1");
  const PrimitivePair log_pair{
      RealFunction([](double x) { return std::log(x); }),
      RealFunction([](double x) { return x * std::log(x) - x; }),
      Interval(0.5, static_cast<double>(n) + 0.5),
  };
  AsymptoticRecord r;
  r.n = n;
  r.log_factorial_exact = log_factorial_exact(n);
  r.approximation = -strip_constant() + newton_integral(log_pair, tight_limits()).value;
  r.abs_error = std::fabs(r.log_factorial_exact - r.approximation);
  r.predicted_bound = kStripDecay / static_cast<double>(n) + kStripDecay / static_cast<double>(kStripTerms);
  return r;
}

double incomplete_stirling_log_constant() { return -strip_constant() + 0.5 * (1.0 + std::log(2.0)); }

IncompleteStirling incomplete_stirling(long long n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "n must be >= 1");
  const double nd = static_cast<double>(n);
  const double ln = std::log(nd);
  const double base = nd * ln - nd + 0.5 * ln;

  IncompleteStirling out;
  AsymptoticRecord& r = out.record;
  r.n = n;
  r.log_factorial_exact = log_factorial_exact(n);
  r.approximation = base + incomplete_stirling_log_constant();
  r.abs_error = std::fabs(r.log_factorial_exact - r.approximation);
  r.predicted_bound = 0.175 / nd + kStripDecay / static_cast<double>(kStripTerms);
  out.d_n = std::exp(r.log_factorial_exact - base);
  return out;
}

}  // namespace newton
