#include "newton/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "newton/compensated_sum.hpp"
#include "newton/fubini.hpp"
#include "newton/laplace.hpp"
#include "newton/newton_engine.hpp"
#include "newton/primitive_io.hpp"
#include "newton/registry.hpp"
#include "newton/sum_asymptotics.hpp"
#include "newton/wallis.hpp"

namespace newton {

namespace {

constexpr int kSchemaVersion = 1;

using Cell = std::variant<long long, double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string q = "\"";
          for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          return q + "\"";
        }
      },
      c);
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += ch;
    }
  }
  return out + "\"";
}

std::string json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(v) ? format_double(v) : "null";
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return json_string(v);
        }
      },
      c);
}

void emit(const Table& t, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << "[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      out << (r ? ",\n " : "\n ") << "{\"schema_version\":" << kSchemaVersion;
      for (std::size_t c = 0; c < t.columns.size(); ++c) {
        out << "," << json_string(t.columns[c]) << ":" << json_cell(t.rows[r][c]);
      }
      out << "}";
    }
    out << (t.rows.empty() ? "]\n" : "\n]\n");
    return;
  }
  for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
    out << "\n";
  }
}

double parse_extended(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || std::isnan(v)) {
    throw Error(ErrorCode::invalid_argument, "not a number or +-inf: '" + text + "'");
  }
  return v;
}

bool within_closure(const Interval& domain, double lo, double hi) {
  const auto l = ExtendedReal::from_double(lo);
  const auto h = ExtendedReal::from_double(hi);
  return domain.lo() <= l && h <= domain.hi() && l < h;
}

BuildConfig build_config(double target) {
  BuildConfig cfg;
  cfg.target_uniform_gap = target;
  return cfg;
}

struct Settings {
  std::string format = "csv";
  std::uint64_t seed = 20240601;
};

// Commands --------------------------------------------------------------------

int cmd_stirling(const std::vector<long long>& ns, const std::string& method, double epsilon, const Settings& s,
                 std::ostream& out) {
  Table t{{"method", "n", "log_factorial_exact", "approximation", "abs_error", "predicted_bound", "within_bound"},
          {}};
  bool ok = true;
  const auto add = [&](const char* m, const AsymptoticRecord& r) {
    const bool within = r.abs_error <= r.predicted_bound;
    ok = ok && within;
    t.rows.push_back({std::string(m), r.n, r.log_factorial_exact, r.approximation, r.abs_error, r.predicted_bound,
                      within});
  };
  for (const long long n : ns) {
    if (n < 1) throw Error(ErrorCode::invalid_argument, "--n values must be positive");
    if (method == "sum" || method == "both") add("sum", incomplete_stirling(n).record);
    if (method == "laplace" || method == "both") add("laplace", stirling_via_laplace(n, epsilon));
  }
  emit(t, s.format, out);
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_gauss(double certify_b, const Settings& s, std::ostream& out) {
  const GaussReport g = gauss_integral_report(certify_b);
  const double reference = std::sqrt(std::numbers::pi);
  const double residual = std::fabs(g.value - reference);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Table t{{"value", "reference", "residual", "i7_squared", "half_line", "negative_half_line", "exchange_b",
           "exchange_value_xy", "exchange_value_yx", "exchange_holds"},
          {}};
  t.rows.push_back({g.value, reference, residual, g.i7_squared, g.half_line, g.negative_half_line,
                    g.exchange ? g.exchange->truncation : nan, g.exchange ? g.exchange->value_xy : nan,
                    g.exchange ? g.exchange->value_yx : nan, g.exchange ? g.exchange->holds : true});
  emit(t, s.format, out);
  const bool ok = residual <= 1e-8 && (!g.exchange || g.exchange->holds);
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_wallis(int n_max, const Settings& s, std::ostream& out) {
  if (n_max < 0) throw Error(ErrorCode::invalid_argument, "--n-max must be >= 0");
  Table t{{"n", "by_recurrence", "by_integral", "by_closed_form", "agree"}, {}};
  bool ok = true;
  for (int n = 0; n <= n_max; ++n) {
    const WallisValue w = wallis_value(n);
    ok = ok && w.agree;
    t.rows.push_back({static_cast<long long>(n), w.by_recurrence, w.by_integral, w.by_closed_form, w.agree});
  }
  emit(t, s.format, out);
  return ok ? kExitOk : kExitCheckFailed;
}

struct FubiniParams {
  std::string which = "rect";
  std::vector<double> b{1, 2, 4, 8, 16};
  std::vector<double> T{2, 4, 8};
  std::string function = "rational";
  double X = 100.0;
  double target = 0.0;  // 0: per-case default
};

int cmd_fubini(const FubiniParams& p, const Settings& s, std::ostream& out) {
  const auto target_or = [&](double fallback) { return p.target > 0.0 ? p.target : fallback; };
  bool ok = true;
  Table t;
  if (p.which == "rect") {
    constexpr double kRectTolerance = 1e-6;
    t.columns = {"case", "function", "x_lo", "x_hi", "y_lo", "y_hi", "value_xy", "value_yx", "discrepancy", "ok"};
    const auto cases = rectangle_battery(s.seed);
    const BuildConfig cfg = build_config(target_or(1e-7));
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const auto& c = cases[i];
      const RectangleResult r = run_rectangle_case(c, cfg);
      const bool good = r.discrepancy <= kRectTolerance;
      ok = ok && good;
      t.rows.push_back({static_cast<long long>(i), c.label, c.x_range.lo().value(), c.x_range.hi().value(),
                        c.y_range.lo().value(), c.y_range.hi().value(), r.value_xy, r.value_yx, r.discrepancy,
                        good});
    }
  } else if (p.which == "special") {
    t.columns = {"b", "A_b", "B_b", "A", "bound_A", "bound_B", "discrepancy", "holds"};
    const BuildConfig cfg = build_config(target_or(1e-6));
    for (const double b : p.b) {
      const IteratedIntegralReport r = special_infinite_fubini(b, cfg);
      ok = ok && r.holds;
      t.rows.push_back({b, r.value_xy, r.value_yx, r.limit_value, r.tail_certificate->bound_A,
                        r.tail_certificate->bound_B, r.discrepancy, r.holds});
    }
  } else if (p.which == "decay") {
    t.columns = {"function", "T", "value_xy", "value_yx", "discrepancy", "tail", "holds"};
    const RegisteredBivariate& f = lookup_bivariate(p.function);
    const DecayBoundedReport d = decay_bounded_fubini(f.f, f.decay_constant, p.T, build_config(target_or(1e-6)));
    for (const auto& r : d.history) {
      ok = ok && r.holds;
      t.rows.push_back({f.id, r.truncation, r.value_xy, r.value_yx, r.discrepancy, r.tail_estimate, r.holds});
    }
  } else if (p.which == "counterexample") {
    t.columns = {"X", "order_xy_value", "order_yx_partial", "section_y2", "divergence_witness"};
    const CounterexampleReport r = asymmetry_counterexample(p.X, build_config(target_or(1e-10)));
    ok = r.divergence_witness;
    t.rows.push_back({r.X, r.order_xy_value, r.order_yx_partial, r.section_y2, r.divergence_witness});
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown fubini case '" + p.which + "'");
  }
  emit(t, s.format, out);
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_gamma(const std::vector<int>& ns, const std::string& mode, const Settings& s, std::ostream& out) {
  Table t{{"n", "mode", "value", "log_value", "log_reference", "rel_error", "tail_bound", "ok"}, {}};
  bool ok = true;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const int n : ns) {
    if (n < 0) throw Error(ErrorCode::invalid_argument, "--n values must be >= 0");
    const double log_ref = log_factorial(n);
    double ref = 1.0;
    for (int k = 2; k <= n; ++k) ref *= k;
    const auto run = [&](GammaMode m, const char* name, double tol) {
      if (n > 170) {
        const double lv = log_gamma_integral(n);
        const double rel = std::fabs(lv - log_ref) / log_ref;
        const bool good = rel <= 1e-12;
        ok = ok && good;
        t.rows.push_back({static_cast<long long>(n), std::string(name), nan, lv, log_ref, rel, nan, good});
        return;
      }
      const GammaResult g = gamma_integral(n, m);
      const double rel = std::fabs(g.value - ref) / ref;
      const bool good = rel <= tol;
      ok = ok && good;
      t.rows.push_back(
          {static_cast<long long>(n), std::string(name), g.value, g.log_value, log_ref, rel, g.tail_bound, good});
    };
    if (mode == "exact" || mode == "both") run(GammaMode::exact_primitive, "exact", n <= 20 ? 1e-12 : 1e-9);
    if (mode == "numeric" || mode == "both") run(GammaMode::numeric, "numeric", 1e-6);
  }
  emit(t, s.format, out);
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_sumint(const std::string& id, long long a, long long b, const Settings& s, std::ostream& out) {
  const RegisteredFunction& f = lookup_function(id);
  if (!f.primitive) throw Error(ErrorCode::invalid_argument, "'" + id + "' has no closed-form primitive");
  if (!within_closure(f.domain, static_cast<double>(a), static_cast<double>(b)) ||
      !f.domain.contains(static_cast<double>(a) + 0.5)) {
    throw Error(ErrorCode::invalid_argument, "[a, b] must lie in " + to_string(f.domain));
  }
  const SumIntegralReport r = monotone_sum_vs_integral(f.f, f.primitive, a, b);
  Table t{{"function_id", "a", "b", "sum", "integral", "theta", "theta_in_range", "constant"}, {}};
  t.rows.push_back({id, a, b, r.sum, r.integral, r.theta, r.theta_in_range, r.constant});
  emit(t, s.format, out);
  return r.theta_in_range ? kExitOk : kExitCheckFailed;
}

int cmd_integrate(const std::string& id, const std::string& lo_text, const std::string& hi_text, double target,
                  const std::string& cache, const Settings& s, std::ostream& out) {
  const RegisteredFunction& f = lookup_function(id);
  const double lo = parse_extended(lo_text);
  const double hi = parse_extended(hi_text);
  if (!within_closure(f.domain, lo, hi)) {
    throw Error(ErrorCode::invalid_argument, "(lo, hi) must lie in " + to_string(f.domain));
  }
  const Interval domain(ExtendedReal::from_double(lo), ExtendedReal::from_double(hi));

  Table t{{"function_id", "lo", "hi", "value", "method", "refinement_level", "cache"}, {}};
  if (f.primitive) {
    const double v = newton_integral({f.f, f.primitive, domain}, tight_limits()).value;
    t.rows.push_back({id, lo, hi, v, std::string("primitive"), -1LL, std::string("none")});
  } else {
    if (!domain.is_finite()) {
      throw Error(ErrorCode::infinite_interval, "'" + id + "' needs a bounded interval for a built primitive");
    }
    const std::string key = id + "|" + format_double(lo) + "|" + format_double(hi) + "|" + format_double(target);
    std::string status = "none";
    std::optional<PiecewisePrimitive> P;
    if (!cache.empty() && std::filesystem::exists(cache)) {
      std::string label;
      PiecewisePrimitive loaded = load_primitive(cache, &label);
      if (label == key) P = std::move(loaded);
    }
    if (P) {
      status = "hit";
    } else {
      P = build_primitive(f.f, domain, build_config(target));
      if (!cache.empty()) {
        save_primitive(cache, *P, key);
        status = "miss";
      }
    }
    const double v = newton_integral({f.f, P->as_function(), domain}, tight_limits()).value;
    t.rows.push_back(
        {id, lo, hi, v, std::string("built"), static_cast<long long>(P->refinement_level()), status});
  }
  emit(t, s.format, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Newton-integral calculus toolkit: Stirling, Wallis, Gauss and Fubini checks", "newton-calc"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings settings;
  app.add_option("--format", settings.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", settings.seed, "Seed for sampled batteries");

  std::vector<long long> stirling_n;
  std::string stirling_method = "both";
  double epsilon = kDefaultEpsilon;
  auto* stirling = app.add_subcommand("stirling", "log n! against both Stirling derivations");
  stirling->add_option("--n", stirling_n, "Values of n")->required()->expected(1, -1);
  stirling->add_option("--method", stirling_method)->check(CLI::IsMember({"sum", "laplace", "both"}));
  stirling->add_option("--epsilon", epsilon, "Exponent slack in (0, 1/2)");

  double certify_b = 0.0;
  auto* gauss = app.add_subcommand("gauss", "Integral of e^{-t^2} over the real line");
  gauss->add_option("--certify-b", certify_b, "Also run the Fubini exchange at this truncation");

  int n_max = 10;
  auto* wallis = app.add_subcommand("wallis", "Wallis integrals three ways");
  wallis->add_option("--n-max", n_max, "Largest n in the table");

  FubiniParams fp;
  auto* fubini = app.add_subcommand("fubini", "Iterated integrals in both orders");
  fubini->add_option("--case", fp.which)->check(CLI::IsMember({"rect", "special", "decay", "counterexample"}));
  fubini->add_option("--b", fp.b, "Truncations for the special case")->expected(1, -1);
  fubini->add_option("--T", fp.T, "Truncations for the decay case")->expected(1, -1);
  fubini->add_option("--function", fp.function, "Quadrant function for the decay case");
  fubini->add_option("--X", fp.X, "Outer truncation for the counterexample");
  fubini->add_option("--target", fp.target, "Build target (uniform gap per unit length)");

  std::vector<int> gamma_n;
  std::string gamma_mode = "both";
  auto* gamma = app.add_subcommand("gamma", "n! as the integral of x^n e^{-x}");
  gamma->add_option("--n", gamma_n, "Values of n")->required()->expected(1, -1);
  gamma->add_option("--mode", gamma_mode)->check(CLI::IsMember({"exact", "numeric", "both"}));

  std::string sum_id;
  long long sum_a = 0, sum_b = 0;
  auto* sumint = app.add_subcommand("sumint", "Sum over a < n <= b against the integral");
  sumint->add_option("--function-id", sum_id, "Registered function id")->required();
  sumint->add_option("--a", sum_a, "Lower summation bound (exclusive)")->required();
  sumint->add_option("--b", sum_b, "Upper summation bound")->required();

  std::string int_id, int_lo, int_hi, int_cache;
  double int_target = 1e-8;
  auto* integrate = app.add_subcommand("integrate", "Newton integral of a registered function");
  integrate->add_option("--function-id", int_id, "Registered function id")->required();
  integrate->add_option("--lo", int_lo, "Lower limit; -inf allowed")->required();
  integrate->add_option("--hi", int_hi, "Upper limit; inf allowed")->required();
  integrate->add_option("--target", int_target, "Build target when no primitive is known");
  integrate->add_option("--cache", int_cache, "Primitive cache file");

  std::string ids;
  for (const auto& id : function_ids()) ids += (ids.empty() ? "" : ", ") + id;
  app.footer("Function ids: " + ids);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*stirling) return cmd_stirling(stirling_n, stirling_method, epsilon, settings, out);
    if (*gauss) return cmd_gauss(certify_b, settings, out);
    if (*wallis) return cmd_wallis(n_max, settings, out);
    if (*fubini) return cmd_fubini(fp, settings, out);
    if (*gamma) return cmd_gamma(gamma_n, gamma_mode, settings, out);
    if (*sumint) return cmd_sumint(sum_id, sum_a, sum_b, settings, out);
    if (*integrate) return cmd_integrate(int_id, int_lo, int_hi, int_target, int_cache, settings, out);
  } catch (const Error& e) {
    err << "newton-calc: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::unknown_function:
      case ErrorCode::invalid_argument:
      case ErrorCode::infinite_interval:
        return kExitUsage;
      default:
        return kExitCheckFailed;
    }
  } catch (const std::exception& e) {
    err << "newton-calc: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace newton
