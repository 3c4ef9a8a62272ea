#include "newton/primitive_builder.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace newton {

void BuildConfig::validate() const {
  if (!(target_uniform_gap > 0.0)) throw Error(ErrorCode::invalid_argument, "target_uniform_gap must be positive");
  if (max_refinement < 1 || max_refinement > 30) {
    throw Error(ErrorCode::invalid_argument, "max_refinement must lie in [1, 30]");
  }
  if (probe_grid < 2) throw Error(ErrorCode::invalid_argument, "probe_grid must be at least 2");
  if (min_refinement < 0 || min_refinement > max_refinement) {
    throw Error(ErrorCode::invalid_argument, "min_refinement must lie in [0, max_refinement]");
  }
}

PiecewisePrimitive::PiecewisePrimitive(std::vector<double> breakpoints, std::vector<QuadraticPiece> pieces,
                                       int refinement_level, double cauchy_delta)
    : breakpoints_(std::move(breakpoints)),
      pieces_(std::move(pieces)),
      refinement_level_(refinement_level),
      cauchy_delta_(cauchy_delta) {
  if (pieces_.empty() || breakpoints_.size() != pieces_.size() + 1) {
    throw Error(ErrorCode::invalid_argument, "need k pieces and k+1 breakpoints");
  }
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1])) {
      throw Error(ErrorCode::invalid_argument, "breakpoints must be strictly increasing and finite");
    }
  }
  if (!std::isfinite(breakpoints_.front()) || !std::isfinite(breakpoints_.back())) {
    throw Error(ErrorCode::invalid_argument, "breakpoints must be finite");
  }
  const double h = (hi() - lo()) / static_cast<double>(pieces_.size());
  bool uniform = true;
  for (std::size_t i = 0; i < breakpoints_.size() && uniform; ++i) {
    const double expected = i + 1 == breakpoints_.size() ? hi() : lo() + static_cast<double>(i) * h;
    uniform = breakpoints_[i] == expected;
  }
  uniform_step_ = uniform ? h : 0.0;
}

std::size_t PiecewisePrimitive::locate(double x) const noexcept {
  const std::size_t last = pieces_.size() - 1;
  if (uniform_step_ > 0.0) {
    const double s = (x - lo()) / uniform_step_;
    std::size_t i = s <= 0.0 ? 0 : std::min(last, static_cast<std::size_t>(s));
    // The division can land one cell off next to a breakpoint.
    while (i > 0 && x < breakpoints_[i]) --i;
    while (i < last && x >= breakpoints_[i + 1]) ++i;
    return i;
  }
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - breakpoints_.begin()) - 1));
  return std::min(i, last);
}

double PiecewisePrimitive::operator()(double x) const {
  if (!(x >= lo() && x <= hi())) {
    std::ostringstream os;
    os.precision(17);
    os << x << " outside [" << lo() << ", " << hi() << "]";
    throw Error(ErrorCode::out_of_domain, os.str());
  }
  return piece_value(locate(x), x);
}

RealFunction PiecewisePrimitive::as_function() const {
  auto shared = std::make_shared<const PiecewisePrimitive>(*this);
  return RealFunction([shared](double x) { return (*shared)(x); }, "piecewise primitive");
}

double evaluate(const PiecewisePrimitive& p, double x) { return p(x); }

namespace {

// Pieces for node values fx on the uniform partition with step h; the final
// node is pinned to b.
void assemble(double a, double b, double h, const std::vector<double>& fx, std::vector<double>& nodes,
              std::vector<QuadraticPiece>& pieces) {
  const std::size_t k = fx.size() - 1;
  nodes.resize(k + 1);
  pieces.resize(k);
  for (std::size_t i = 0; i < k; ++i) nodes[i] = a + static_cast<double>(i) * h;
  nodes[k] = b;
  double w = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double hi = nodes[i + 1] - nodes[i];
    QuadraticPiece& p = pieces[i];
    p.v = fx[i];
    p.half_u = 0.5 * (fx[i + 1] - fx[i]) / hi;
    p.w = w;
    // The next shift is this piece's own right-end value, so adjacent pieces
    // agree bit for bit at the shared breakpoint.
    w = p.at(hi);
  }
}

double eval_uniform(double a, double h, const std::vector<double>& nodes, const std::vector<QuadraticPiece>& pieces,
                    double x) {
  const std::size_t last = pieces.size() - 1;
  const double s = (x - a) / h;
  std::size_t i = s <= 0.0 ? 0 : std::min(last, static_cast<std::size_t>(s));
  while (i > 0 && x < nodes[i]) --i;
  while (i < last && x >= nodes[i + 1]) ++i;
  return pieces[i].at(x - nodes[i]);
}

void require_finite(const std::vector<double>& xs, const std::vector<double>& ys) {
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (!std::isfinite(ys[i])) {
      std::ostringstream os;
      os.precision(17);
      os << "integrand is " << ys[i] << " at x = " << xs[i];
      throw Error(ErrorCode::evaluation_failure, os.str());
    }
  }
}

}  // namespace

PiecewisePrimitive build_primitive_batched(const BatchEvaluator& f, const Interval& domain, const BuildConfig& cfg) {
  cfg.validate();
  if (!domain.is_finite()) {
    throw Error(ErrorCode::infinite_interval, "primitives are built on bounded intervals, got " + to_string(domain));
  }
  const double a = domain.lo().value();
  const double b = domain.hi().value();
  const double tolerance = cfg.target_uniform_gap * (b - a);

  std::vector<double> probes(static_cast<std::size_t>(cfg.probe_grid));
  for (std::size_t j = 0; j < probes.size(); ++j) {
    probes[j] = a + (b - a) * static_cast<double>(j) / static_cast<double>(probes.size() - 1);
  }
  probes.back() = b;

  std::vector<double> xs{a, b};
  std::vector<double> fx(2);
  f(xs, fx);
  require_finite(xs, fx);

  double h = b - a;
  std::vector<double> nodes, prev_nodes;
  std::vector<QuadraticPiece> pieces, prev_pieces;
  assemble(a, b, h, fx, nodes, pieces);
  std::vector<double> prev_probe(probes.size());
  for (std::size_t j = 0; j < probes.size(); ++j) prev_probe[j] = eval_uniform(a, h, nodes, pieces, probes[j]);

  std::vector<double> gaps;
  std::vector<double> fresh_x, fresh_y, next_fx;
  for (int level = 1; level <= cfg.max_refinement; ++level) {
    const std::size_t old_k = fx.size() - 1;
    const double next_h = h * 0.5;
    fresh_x.resize(old_k);
    fresh_y.resize(old_k);
    for (std::size_t i = 0; i < old_k; ++i) fresh_x[i] = a + static_cast<double>(2 * i + 1) * next_h;
    f(fresh_x, fresh_y);
    require_finite(fresh_x, fresh_y);

    next_fx.resize(2 * old_k + 1);
    for (std::size_t i = 0; i < old_k; ++i) {
      next_fx[2 * i] = fx[i];
      next_fx[2 * i + 1] = fresh_y[i];
    }
    next_fx[2 * old_k] = fx[old_k];
    fx.swap(next_fx);
    h = next_h;
    assemble(a, b, h, fx, nodes, pieces);

    double gap = 0.0;
    for (std::size_t j = 0; j < probes.size(); ++j) {
      const double v = eval_uniform(a, h, nodes, pieces, probes[j]);
      gap = std::max(gap, std::fabs(v - prev_probe[j]));
      prev_probe[j] = v;
    }
    gaps.push_back(gap);

    if (level >= cfg.min_refinement && gap <= tolerance) {
      PiecewisePrimitive result(std::move(nodes), std::move(pieces), level, gap);
      result.gap_history = std::move(gaps);
      return result;
    }
  }
  std::ostringstream os;
  os << "Cauchy gap " << gaps.back() << " above " << tolerance << " after " << cfg.max_refinement
     << " refinements on " << to_string(domain);
  throw Error(ErrorCode::refinement_exhausted, os.str());
}

PiecewisePrimitive build_primitive(const RealFunction& f, const Interval& domain, const BuildConfig& cfg) {
  return build_primitive_batched(
      [&f](const std::vector<double>& xs, std::vector<double>& out) {
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
      },
      domain, cfg);
}

double derivative_check(const PiecewisePrimitive& p, const RealFunction& f, int grid) {
  if (grid < 2) throw Error(ErrorCode::invalid_argument, "derivative_check needs grid >= 2");
  const double a = p.lo();
  const double b = p.hi();
  double worst = 0.0;
  for (int j = 1; j <= grid; ++j) {
    const double x = a + (b - a) * j / (grid + 1.0);
    const double h = std::min({1e-5, 0.5 * (x - a), 0.5 * (b - x)});
    const double fd = (p(x + h) - p(x - h)) / (2.0 * h);
    worst = std::max(worst, std::fabs(fd - f(x)));
  }
  return worst;
}

}  // namespace newton
