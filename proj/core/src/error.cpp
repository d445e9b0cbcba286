#include "kcurv/error.hpp"

namespace kcurv {

namespace {

constexpr std::string_view kErrorNames[] = {
    "dimension_mismatch", "wrong_argument_count", "invalid_argument", "parse_error",
    "zero_vector",        "near_degenerate",      "nonpositive_value", "zero_gradient",
    "not_in_index_cone",  "not_on_level_set",     "degenerate_metric", "chart_exit",
    "degenerate_plane",   "ill_conditioned",      "geodesic_failure",  "left_index_cone",
    "step_rejected",      "singular_point",       "no_smooth_point_found",
    "hessian_zero",       "unsupported_form",     "nonpositive_dimension",
    "region_empty",
};

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  return kErrorNames[static_cast<int>(code)];
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace kcurv
