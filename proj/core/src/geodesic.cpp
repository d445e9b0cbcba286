#include "kcurv/geodesic.hpp"

#include <cmath>

#include "kcurv/cone.hpp"
#include "kcurv/curvature.hpp"
#include "kcurv/error.hpp"

namespace kcurv {

namespace {

/// −Γ^k_ij w^i w^j in chart coordinates, from the exact metric derivatives.
Vector acceleration(const RadialChart& chart, const Vector& u, const Vector& w) {
  std::vector<Matrix> dg;
  const Matrix g = chart.metric_with_derivatives(u, dg);
  const Eigen::Index m = chart.dim();
  Vector c = Vector::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) c += w[i] * (dg[static_cast<std::size_t>(i)] * w);
  for (Eigen::Index l = 0; l < m; ++l) c[l] -= 0.5 * w.dot(dg[static_cast<std::size_t>(l)] * w);
  return -g.ldlt().solve(c);
}

struct State {
  Vector u;
  Vector w;
};

State rk4_step(const RadialChart& chart, const Vector& w0, double dt) {
  const Vector u0 = Vector::Zero(chart.dim());
  const Vector a1 = acceleration(chart, u0, w0);
  const Vector w1 = w0 + 0.5 * dt * a1;
  const Vector a2 = acceleration(chart, u0 + 0.5 * dt * w0, w1);
  const Vector w2 = w0 + 0.5 * dt * a2;
  const Vector a3 = acceleration(chart, u0 + 0.5 * dt * w1, w2);
  const Vector w3 = w0 + dt * a3;
  const Vector a4 = acceleration(chart, u0 + dt * w2, w3);
  return {dt / 6.0 * (w0 + 2.0 * w1 + 2.0 * w2 + w3), w0 + dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)};
}

Matrix as_columns(const std::vector<Vector>& vs, Eigen::Index rows) {
  Matrix out(rows, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = vs[i];
  return out;
}

/// Projects the previous frame onto the tangent space at p and re-orthonormalizes.
Matrix transport_frame(const NumericForm& f, const ConePoint& p, const Matrix& previous) {
  std::vector<Vector> candidates;
  for (Eigen::Index i = 0; i < previous.cols(); ++i) {
    candidates.push_back(project_to_tangent(p.grad, p.x, previous.col(i)));
  }
  const std::vector<Vector> basis = tangent_basis(f, p.x);
  candidates.insert(candidates.end(), basis.begin(), basis.end());
  const std::vector<Vector> frame = metric_gram_schmidt(-p.q, candidates, 1e-12, basis.size());
  if (frame.size() != basis.size()) throw Error(ErrorCode::degenerate_metric, "frame transport failed");
  return as_columns(frame, p.x.size());
}

ConePoint checked_point(const NumericForm& f, const Vector& x) {
  try {
    ConePoint p = classify(f, x);
    if (p.in_index_cone() && !p.flipped) return p;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::near_degenerate) throw;
  }
  throw Error(ErrorCode::left_index_cone, "geodesic left the index cone");
}

}  // namespace

Trajectory geodesic_integrate(const NumericForm& f, const Vector& x0, const Vector& v0, double t_end, int steps,
                              const GeodesicOptions& opts) {
  if (steps < 1) throw Error(ErrorCode::invalid_argument, "steps must be >= 1");
  if (x0.size() != f.dim() || v0.size() != f.dim()) throw Error(ErrorCode::dimension_mismatch, "geodesic");
  const TangentFrame start = orthonormal_frame(f, x0);
  const ConePoint& p0 = start.base;
  if (std::abs(p0.grad.dot(v0)) > opts.tangent_tol * p0.grad.norm() * v0.norm()) {
    throw Error(ErrorCode::invalid_argument, "initial velocity is not tangent to the level set");
  }

  Trajectory out;
  const double dt = t_end / steps;
  const double speed0 = metric(f, x0, v0, v0);
  out.times.push_back(0.0);
  out.points.push_back(x0);
  out.velocities.push_back(v0);
  out.speeds.push_back(speed0);
  out.level_drift.push_back(0.0);

  ConePoint here = p0;
  Matrix frame = as_columns(start.vectors, f.dim());
  Vector v = v0;
  double speed = speed0;
  for (int k = 1; k <= steps; ++k) {
    const RadialChart chart(f, here.x, frame);
    // The frame is metric-orthonormal, so chart velocity components are pairings.
    const Vector w0 = frame.transpose() * (-here.q) * v;
    State next;
    Vector x_new;
    Matrix push;
    try {
      next = rk4_step(chart, w0, dt);
      x_new = chart.point(next.u);
      push = chart.pushforward(next.u);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::chart_exit) throw;
      throw Error(ErrorCode::left_index_cone, "geodesic left the positive cone");
    }
    const double drift = f.value(x_new) - 1.0;
    x_new = normalize_to_level(f, x_new);
    here = checked_point(f, x_new);
    v = push * next.w;
    const double speed_new = v.dot(-here.q * v);
    if (std::abs(speed_new - speed) > opts.max_energy_drift * std::max(speed, 1e-300)) {
      throw Error(ErrorCode::step_rejected, "energy drift above tolerance; increase steps");
    }
    speed = speed_new;
    frame = transport_frame(f, here, frame);

    out.times.push_back(k * dt);
    out.points.push_back(x_new);
    out.velocities.push_back(v);
    out.speeds.push_back(speed);
    out.level_drift.push_back(drift);
  }
  return out;
}

Vector exp_map(const NumericForm& f, const Vector& x0, const Vector& v, int steps) {
  return geodesic_integrate(f, x0, v, 1.0, steps).points.back();
}

}  // namespace kcurv
