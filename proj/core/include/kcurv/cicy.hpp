#pragma once

#include <string_view>
#include <vector>

#include "kcurv/form.hpp"

namespace kcurv {

/// Complete intersection in P^{n_1} × … × P^{n_m}; each column holds the
/// multidegrees (q_1a, …, q_ma) of one defining equation.
struct CicyConfig {
  std::vector<int> ambient;
  std::vector<std::vector<int>> columns;
};

struct CicyInfo {
  int dim = 0;
  /// Every row sums to n_i + 1.
  bool calabi_yau = false;
  std::vector<int> row_sums;
};

CicyInfo validate(const CicyConfig& cfg);

/// Coefficient of ∏ J_i^{n_i} in (Σ x_i J_i)^dim · ∏_a (Σ_i q_ia J_i).
Form intersection_form(const CicyConfig& cfg);

/// Parses "3,2,2" and "1,1,0;1,1,0;2,1,1;0,0,2" (columns separated by ';').
CicyConfig parse_cicy(std::string_view ambient, std::string_view columns);

}  // namespace kcurv
