#include "newton/fubini.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "newton/newton_engine.hpp"
#include "newton/parallel.hpp"

namespace newton {

namespace {

double iterated(const BivariateFunction& f, const Interval& x_range, const Interval& y_range, Order order,
                const BuildConfig& cfg, int inner_min_refinement) {
  const Interval& outer = order == Order::xy ? x_range : y_range;
  const Interval& inner = order == Order::xy ? y_range : x_range;
  BuildConfig inner_cfg = cfg;
  inner_cfg.target_uniform_gap = 0.5 * cfg.target_uniform_gap;
  inner_cfg.probe_grid = std::min(cfg.probe_grid, 129);
  inner_cfg.min_refinement = std::clamp(inner_min_refinement, cfg.min_refinement, cfg.max_refinement);

  const BatchEvaluator inner_values = [&](const std::vector<double>& nodes, std::vector<double>& out) {
    parallel_for(nodes.size(), [&](std::size_t i) {
      const double s = nodes[i];
      const RealFunction section = order == Order::xy ? RealFunction([&f, s](double y) { return f(s, y); })
                                                      : RealFunction([&f, s](double x) { return f(x, s); });
      out[i] = build_primitive(section, inner, inner_cfg).total();
    });
  };
  return build_primitive_batched(inner_values, outer, cfg).total();
}

}  // namespace

double iterated_rectangle(const BivariateFunction& f, const Interval& x_range, const Interval& y_range, Order order,
                          const BuildConfig& cfg) {
  return iterated(f, x_range, y_range, order, cfg, cfg.min_refinement);
}

// Tail constants ----------------------------------------------------------------

namespace {

double maximize(const std::function<double(double)>& g, double lo, double hi) {
  const auto [arg, neg] = boost::math::tools::brent_find_minima([&](double x) { return -g(x); }, lo, hi, 26);
  (void)arg;
  return -neg;
}

TailConstants compute_tail_constants() {
  TailConstants t{};

  // The truncation past 10 costs at most e^{-100}/20, added to stay an upper value.
  BuildConfig gauss_cfg;
  gauss_cfg.target_uniform_gap = 1e-11;
  const auto half_gauss = build_primitive([](double x) { return std::exp(-x * x); }, Interval(0.0, 10.0), gauss_cfg);
  t.c_gauss = half_gauss.total() + std::exp(-100.0) / 20.0;

  t.c0 = maximize([](double x) { return x * x * x * std::exp(-x * x); }, 1.0, 8.0);
  t.c1 = maximize([](double x) { return x * std::exp(-x * x); }, 0.0, 8.0);

  // I(z) in closed form through its Newton primitive in x.
  const Interval half_line(ExtendedReal::finite(0.0), ExtendedReal::pos_infinity());
  double worst = 0.0;
  constexpr int kGrid = 2001;
  for (int j = 0; j < kGrid; ++j) {
    const double z = std::pow(1e4, static_cast<double>(j) / (kGrid - 1));
    const double s = 1.0 + z * z;
    const PrimitivePair section{
        RealFunction([s](double x) { return x * std::exp(-x * x * s); }),
        RealFunction([s](double x) { return -std::exp(-x * x * s) / (2.0 * s); }),
        half_line,
    };
    const double I = newton_integral(section, tight_limits()).value;
    const double majorant = std::pow(z, -4.0 / 3.0) + t.c1 * std::exp(-std::cbrt(z)) / z;
    worst = std::max(worst, std::max(I, majorant) * std::pow(z, 4.0 / 3.0));
  }
  t.c2 = std::exp2(std::floor(std::log2(worst)) + 1.0);
  return t;
}

}  // namespace

const TailConstants& tail_constants() {
  static const TailConstants constants = compute_tail_constants();
  return constants;
}

TailBound tail_bound(double b) {
  const TailConstants& t = tail_constants();
  TailBound out{t.c_gauss, t.c0, t.c1, t.c2, 0.0, 0.0};
  out.bound_A = t.c_gauss / std::sqrt(b) + b * std::exp(-std::sqrt(b)) + t.c0 * (1.0 + std::exp(-1.0)) / b;
  out.bound_B = (b * b + b) * std::exp(-b) + 3.0 * t.c2 / std::cbrt(b);
  return out;
}

BivariateFunction gauss_kernel() {
  return {[](double x, double z) { return x * std::exp(-x * x) * std::exp(-x * x * z * z); },
          "x exp(-x^2 (1 + z^2))"};
}

IteratedIntegralReport special_infinite_fubini(double b, const BuildConfig& cfg) {
  if (!(b >= 1.0) || !std::isfinite(b)) throw Error(ErrorCode::invalid_argument, "truncation b must be >= 1");
  const Interval square(0.0, b);
  const BivariateFunction f = gauss_kernel();

  IteratedIntegralReport r;
  r.truncation = b;
  // Inner sections have width about 1/b and the outer profile width about 1;
  // coarser partitions can miss them entirely and stop on a zero Cauchy gap.
  BuildConfig outer_cfg = cfg;
  outer_cfg.min_refinement =
      std::clamp(static_cast<int>(std::ceil(std::log2(4.0 * b))), cfg.min_refinement, cfg.max_refinement);
  const int inner_min = static_cast<int>(std::ceil(std::log2(4.0 * b * b)));
  r.value_xy = iterated(f, square, square, Order::xy, outer_cfg, inner_min);
  r.value_yx = iterated(f, square, square, Order::yx, outer_cfg, inner_min);
  r.discrepancy = std::fabs(r.value_xy - r.value_yx);
  const TailBound tb = tail_bound(b);
  r.tail_certificate = tb;
  r.limit_value = tb.c_gauss * tb.c_gauss;
  r.tail_estimate = tb.bound_A;
  r.holds = std::fabs(r.limit_value - r.value_xy) <= tb.bound_A &&
            std::fabs(r.limit_value - r.value_yx) <= tb.bound_A + tb.bound_B;
  return r;
}

// Decay-bounded quadrant --------------------------------------------------------

void require_decay(const BivariateFunction& f, double c) {
  if (!(c >= 0.0)) throw Error(ErrorCode::invalid_argument, "decay constant must be non-negative");
  constexpr int kRadii = 64;
  constexpr int kAngles = 33;
  for (int i = 0; i < kRadii; ++i) {
    const double r = std::pow(1e4, static_cast<double>(i) / (kRadii - 1));
    const double allowed = c / (r * r * r);
    for (int j = 0; j < kAngles; ++j) {
      const double s = r * static_cast<double>(j) / (kAngles - 1);
      for (const auto& [x, y] : {std::pair{r, s}, std::pair{s, r}}) {
        const double v = std::fabs(f(x, y));
        if (!(v <= allowed * (1.0 + 1e-12))) {
          std::ostringstream os;
          os.precision(17);
          os << "|f(" << x << ", " << y << ")| = " << v << " exceeds " << allowed;
          throw Error(ErrorCode::decay_violation, os.str());
        }
      }
    }
  }
}

DecayBoundedReport decay_bounded_fubini(const BivariateFunction& f, double c, const TruncationPoints& schedule,
                                        const BuildConfig& cfg) {
  if (schedule.empty()) throw Error(ErrorCode::invalid_argument, "empty truncation schedule");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (!(schedule[k] >= 1.0) || (k > 0 && !(schedule[k] > schedule[k - 1]))) {
      throw Error(ErrorCode::invalid_argument, "truncation points must be increasing and >= 1");
    }
  }
  require_decay(f, c);

  DecayBoundedReport out;
  for (const double T : schedule) {
    const Interval side(0.0, T);
    IteratedIntegralReport r;
    r.truncation = T;
    r.value_xy = iterated_rectangle(f, side, side, Order::xy, cfg);
    r.value_yx = iterated_rectangle(f, side, side, Order::yx, cfg);
    r.discrepancy = std::fabs(r.value_xy - r.value_yx);
    // Exterior of the square: the level set max(x, y) = r has length 2r.
    r.tail_estimate = 2.0 * c / T;
    r.holds = r.discrepancy <= 2.0 * r.tail_estimate;
    out.history.push_back(r);
  }
  out.final = out.history.back();
  return out;
}

// Order asymmetry ---------------------------------------------------------------

namespace {
double bump_width(double x) { return 0.5 * std::exp(-x); }
}  // namespace

BivariateFunction counterexample_family() {
  return {[](double x, double y) {
            const double u = (y - 1.0) / bump_width(x);
            return std::exp(-u * u);
          },
          "exp(-((y - 1) / w(x))^2), w(x) = e^-x / 2"};
}

CounterexampleReport asymmetry_counterexample(double X, const BuildConfig& cfg) {
  if (!(X >= 1.0) || !std::isfinite(X)) throw Error(ErrorCode::invalid_argument, "X must be >= 1");
  const BivariateFunction f = counterexample_family();
  const Interval outer(0.0, X);
  const Interval half_line(ExtendedReal::finite(0.0), ExtendedReal::pos_infinity());

  // J(x): Newton integral in y with the erf primitive of the bump.
  const RealFunction J([&](double x) {
    const double w = bump_width(x);
    const PrimitivePair section{
        RealFunction([&f, x](double y) { return f(x, y); }),
        RealFunction([w](double y) { return 0.5 * w * std::sqrt(std::numbers::pi) * std::erf((y - 1.0) / w); }),
        half_line,
    };
    return newton_integral(section).value;
  });

  CounterexampleReport r;
  r.X = X;
  r.order_xy_value = build_primitive(J, outer, cfg).total();
  r.order_yx_partial = build_primitive([&f](double x) { return f(x, 1.0); }, outer, cfg).total();
  r.section_y2 = build_primitive([&f](double x) { return f(x, 2.0); }, outer, cfg).total();
  r.divergence_witness = r.order_yx_partial >= 0.9 * X;
  return r;
}

// Rectangle battery -------------------------------------------------------------

std::vector<RectangleCase> rectangle_battery(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1p-53; };
  const auto side = [&] {
    const double lo = -1.5 + 2.0 * unit();
    return Interval(lo, lo + 0.5 + 0.5 * unit());
  };

  const std::vector<BivariateFunction> fs = {
      {[](double x, double y) { return std::exp(-x * x - y * y); }, "exp(-x^2-y^2)"},
      {[](double x, double y) { return std::sin(x) * std::cos(y); }, "sin(x)cos(y)"},
      {[](double x, double y) { return x + y; }, "x+y"},
      {[](double x, double y) { return x * y * y; }, "x*y^2"},
      {[](double x, double y) { return 1.0 / (1.0 + x * x + y * y); }, "1/(1+x^2+y^2)"},
      {[](double x, double y) { return std::cos(x * y); }, "cos(x*y)"},
      {[](double x, double y) { return std::exp(x - y); }, "exp(x-y)"},
      {[](double x, double y) { return std::log(3.0 + x + y); }, "log(3+x+y)"},
      {[](double x, double y) { return std::sqrt(1.0 + x * x * y * y); }, "sqrt(1+x^2 y^2)"},
      {[](double x, double y) { return x * x * x - y * y + x * y; }, "x^3-y^2+xy"},
  };
  std::vector<RectangleCase> cases;
  cases.reserve(fs.size());
  for (const auto& f : fs) {
    const Interval xr = side();
    const Interval yr = side();
    cases.push_back({f.label, f, xr, yr});
  }
  return cases;
}

RectangleResult run_rectangle_case(const RectangleCase& c, const BuildConfig& cfg) {
  RectangleResult r;
  r.label = c.label;
  r.value_xy = iterated_rectangle(c.f, c.x_range, c.y_range, Order::xy, cfg);
  r.value_yx = iterated_rectangle(c.f, c.x_range, c.y_range, Order::yx, cfg);
  r.discrepancy = std::fabs(r.value_xy - r.value_yx);
  return r;
}

}  // namespace newton
