#pragma once

#include <optional>

#include "newton/error.hpp"

namespace test_support {

// Code of the newton::Error thrown by f, if any.
template <class F>
std::optional<newton::ErrorCode> error_code_of(F&& f) {
  try {
    f();
  } catch (const newton::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Composite Simpson rule with 2m panels. Independent of the library.
template <class F>
double simpson(F&& f, double a, double b, int m) {
  const double h = (b - a) / (2.0 * m);
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < 2 * m; ++i) (i % 2 ? odd : even) += f(a + i * h);
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

}  // namespace test_support
