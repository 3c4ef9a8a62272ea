#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "newton/core_real.hpp"

namespace newton {

/// One quadratic piece in local coordinates t = x - a_i:
///   value(t) = w + t * (v + t * half_u)
/// v is the interpolated integrand value at a_i and 2*half_u the slope of the
/// linear interpolant on the piece.
struct QuadraticPiece {
  double half_u = 0.0;
  double v = 0.0;
  double w = 0.0;

  double at(double t) const noexcept { return w + t * (v + t * half_u); }
};

struct BuildConfig {
  /// Stop once the max gap between consecutive levels is <= this * (b - a).
  double target_uniform_gap = 1e-8;
  int max_refinement = 22;
  int probe_grid = 1025;
  /// Levels always built before the Cauchy test may stop refinement.
  int min_refinement = 3;

  void validate() const;
};

/// C^1 piecewise quadratic primitive of a piecewise-linear interpolant.
class PiecewisePrimitive {
 public:
  PiecewisePrimitive() = default;
  /// Validates sizes and ordering; throws InvalidArgument.
  PiecewisePrimitive(std::vector<double> breakpoints, std::vector<QuadraticPiece> pieces, int refinement_level,
                     double cauchy_delta);

  /// Throws OutOfDomain outside [a, b].
  double operator()(double x) const;
  /// Value of piece i at x, with no domain check (x may lie on either end).
  double piece_value(std::size_t i, double x) const { return pieces_[i].at(x - breakpoints_[i]); }

  double lo() const noexcept { return breakpoints_.front(); }
  double hi() const noexcept { return breakpoints_.back(); }
  double base_point() const noexcept { return lo(); }
  /// F(b) - F(a) = F(b).
  double total() const noexcept { return pieces_.back().at(breakpoints_.back() - breakpoints_[breakpoints_.size() - 2]); }

  std::size_t size() const noexcept { return pieces_.size(); }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<QuadraticPiece>& pieces() const noexcept { return pieces_; }
  int refinement_level() const noexcept { return refinement_level_; }
  double cauchy_delta() const noexcept { return cauchy_delta_; }

  /// Gap between each pair of consecutive levels, coarsest first.
  std::vector<double> gap_history;

  /// Shares the piece tables; the copy stays valid after *this is destroyed.
  RealFunction as_function() const;

 private:
  std::size_t locate(double x) const noexcept;

  std::vector<double> breakpoints_;
  std::vector<QuadraticPiece> pieces_;
  int refinement_level_ = 0;
  double cauchy_delta_ = 0.0;
  double uniform_step_ = 0.0;  // 0 when the partition is not uniform
};

/// Fills out[i] = f(xs[i]). Lets callers evaluate expensive integrands in bulk.
using BatchEvaluator = std::function<void(const std::vector<double>& xs, std::vector<double>& out)>;

/// Dyadic refinement of a uniform partition of [a, b], reusing node values
/// between levels. Throws InfiniteInterval, EvaluationFailure on non-finite
/// samples, RefinementExhausted when the Cauchy test fails at max_refinement.
PiecewisePrimitive build_primitive(const RealFunction& f, const Interval& domain, const BuildConfig& cfg = {});
PiecewisePrimitive build_primitive_batched(const BatchEvaluator& f, const Interval& domain,
                                           const BuildConfig& cfg = {});

double evaluate(const PiecewisePrimitive& p, double x);

/// Max |(P(x+h) - P(x-h))/(2h) - f(x)| over `grid` uniform interior points,
/// h = 1e-5 (shrunk near the ends). Throws InvalidArgument for grid < 2.
double derivative_check(const PiecewisePrimitive& p, const RealFunction& f, int grid);

}  // namespace newton
