#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace newton {

enum class ErrorCode {
  invalid_argument,
  non_convergent,
  evaluation_failure,
  domain_mismatch,
  split_point_outside_interval,
  pointwise_order_violated,
  infinite_interval,
  range_violation,
  primitive_mismatch,
  refinement_exhausted,
  out_of_domain,
  decay_violation,
  not_monotone,
  constant_function,
  budget_violation,
  overflow,
  unknown_function,
  invalid_format,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The code identifies the failure class;
/// the message carries the numbers that triggered it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace newton
