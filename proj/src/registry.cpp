#include "newton/registry.hpp"

#include <cmath>
#include <limits>

#include "newton/newton_engine.hpp"

namespace newton {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<RegisteredFunction>& table() {
  static const std::vector<RegisteredFunction> fs = [] {
    const auto poly5 = gamma_pair(5);
    return std::vector<RegisteredFunction>{
        {"cos", [](double x) { return std::cos(x); }, [](double x) { return std::sin(x); }, Interval(-kInf, kInf),
         "cos x"},
        {"sin", [](double x) { return std::sin(x); }, [](double x) { return -std::cos(x); }, Interval(-kInf, kInf),
         "sin x"},
        {"exp-neg", [](double x) { return std::exp(-x); }, [](double x) { return -std::exp(-x); },
         Interval(-kInf, kInf), "e^-x"},
        {"exp-neg-square", [](double x) { return std::exp(-x * x); }, {}, Interval(-kInf, kInf),
         "e^(-x^2), built primitive only"},
        {"log", [](double x) { return std::log(x); }, [](double x) { return x * std::log(x) - x; },
         Interval(0.0, kInf), "log x"},
        {"log1p", [](double x) { return std::log1p(x); },
         [](double x) { return (1.0 + x) * std::log1p(x) - x; }, Interval(-1.0, kInf), "log(1 + x)"},
        {"reciprocal-square", [](double x) { return 1.0 / (x * x); }, [](double x) { return -1.0 / x; },
         Interval(0.0, kInf), "x^-2"},
        {"identity", [](double x) { return x; }, [](double x) { return 0.5 * x * x; }, Interval(-kInf, kInf), "x"},
        {"one", [](double) { return 1.0; }, [](double x) { return x; }, Interval(-kInf, kInf), "1"},
        {"arctan-density", [](double x) { return 1.0 / (1.0 + x * x); }, [](double x) { return std::atan(x); },
         Interval(-kInf, kInf), "1/(1 + x^2)"},
        {"gamma-kernel-5", poly5.integrand, poly5.primitive, Interval(0.0, kInf), "x^5 e^-x"},
    };
  }();
  return fs;
}

const std::vector<RegisteredBivariate>& bivariate_table() {
  static const std::vector<RegisteredBivariate> fs = {
      {"rational",
       {[](double x, double y) {
          const double s = 1.0 + x * x + y * y;
          return 1.0 / (s * s);
        },
        "1/(1+x^2+y^2)^2"},
       1.0},
      // max_r r^3 e^{-r} = 27 e^{-3}
      {"exp-sum", {[](double x, double y) { return std::exp(-x - y); }, "exp(-x-y)"}, 27.0 * std::exp(-3.0)},
      {"zero", {[](double, double) { return 0.0; }, "0"}, 0.0},
  };
  return fs;
}

}  // namespace

const RegisteredFunction& lookup_function(std::string_view id) {
  for (const auto& f : table()) {
    if (f.id == id) return f;
  }
  throw Error(ErrorCode::unknown_function, "no registered function '" + std::string(id) + "'");
}

std::vector<std::string> function_ids() {
  std::vector<std::string> ids;
  for (const auto& f : table()) ids.push_back(f.id);
  return ids;
}

const RegisteredBivariate& lookup_bivariate(std::string_view id) {
  for (const auto& f : bivariate_table()) {
    if (f.id == id) return f;
  }
  throw Error(ErrorCode::unknown_function, "no registered quadrant function '" + std::string(id) + "'");
}

std::vector<std::string> bivariate_ids() {
  std::vector<std::string> ids;
  for (const auto& f : bivariate_table()) ids.push_back(f.id);
  return ids;
}

}  // namespace newton
