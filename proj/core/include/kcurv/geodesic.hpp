#pragma once

#include <vector>

#include "kcurv/linalg.hpp"
#include "kcurv/numeric_form.hpp"

namespace kcurv {

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> points;
  std::vector<Vector> velocities;
  /// Metric speed squared G(v, v) at each point.
  std::vector<double> speeds;
  /// F(point) − 1 measured before renormalization; 0 at the start.
  std::vector<double> level_drift;
};

struct GeodesicOptions {
  /// Per-step relative change of G(v, v) above which the step is rejected.
  double max_energy_drift = 1e-6;
  /// Relative tolerance for ∇F(x₀)·v₀ = 0.
  double tangent_tol = 1e-8;
};

/// RK4 in radial charts centred at the current point, `steps` steps of size
/// T/steps. T may be negative.
Trajectory geodesic_integrate(const NumericForm& f, const Vector& x0, const Vector& v0, double t_end, int steps,
                              const GeodesicOptions& opts = {});

/// Endpoint of geodesic_integrate with T = 1.
Vector exp_map(const NumericForm& f, const Vector& x0, const Vector& v, int steps = 1000);

}  // namespace kcurv
