#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace newton {

/// Neumaier (improved Kahan) summation. The running compensation absorbs the
/// low-order bits lost by each addition, including the case where the new
/// term is larger in magnitude than the running sum.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double initial) : sum_(initial) {}

  CompensatedSum& operator+=(double value) noexcept {
    const double t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  CompensatedSum& operator-=(double value) noexcept { return *this += -value; }

  double value() const noexcept { return sum_ + compensation_; }
  explicit operator double() const noexcept { return value(); }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// log(n!) as a compensated sum of log m, m = 1..n.
inline double log_factorial(long long n) {
  CompensatedSum acc;
  for (long long m = 2; m <= n; ++m) acc += std::log(static_cast<double>(m));
  return acc.value();
}

/// Prefix table of log(m!) for m = 0..n_max, built with one compensated pass.
class LogFactorialTable {
 public:
  explicit LogFactorialTable(std::size_t n_max) : values_(n_max + 1, 0.0) {
    CompensatedSum acc;
    for (std::size_t m = 2; m <= n_max; ++m) {
      acc += std::log(static_cast<double>(m));
      values_[m] = acc.value();
    }
  }

  double operator()(std::size_t n) const { return values_.at(n); }
  std::size_t max_n() const noexcept { return values_.size() - 1; }

 private:
  std::vector<double> values_;
};

}  // namespace newton
