#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "newton/core_real.hpp"
#include "newton/fubini.hpp"

namespace newton {

struct RegisteredFunction {
  std::string id;
  RealFunction f;
  /// Empty when no closed-form primitive is known; integrate then builds one.
  RealFunction primitive;
  /// Open interval where f is defined.
  Interval domain;
  std::string description;
};

/// Throws UnknownFunction.
const RegisteredFunction& lookup_function(std::string_view id);
std::vector<std::string> function_ids();

struct RegisteredBivariate {
  std::string id;
  BivariateFunction f;
  /// c with |f(x, y)| <= c max(x, y)^{-3} for max(x, y) >= 1.
  double decay_constant;
};

/// Decay-bounded quadrant functions. Throws UnknownFunction.
const RegisteredBivariate& lookup_bivariate(std::string_view id);
std::vector<std::string> bivariate_ids();

}  // namespace newton
