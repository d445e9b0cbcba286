#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kcurv {

enum class ErrorCode {
  dimension_mismatch,
  wrong_argument_count,
  invalid_argument,
  parse_error,
  zero_vector,
  near_degenerate,
  nonpositive_value,
  zero_gradient,
  not_in_index_cone,
  not_on_level_set,
  degenerate_metric,
  chart_exit,
  degenerate_plane,
  ill_conditioned,
  geodesic_failure,
  left_index_cone,
  step_rejected,
  singular_point,
  no_smooth_point_found,
  hessian_zero,
  unsupported_form,
  nonpositive_dimension,
  region_empty,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this one exception type; callers
// that need to branch (scan skips, CLI exit codes) switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kcurv
