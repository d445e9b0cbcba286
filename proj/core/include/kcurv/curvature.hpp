#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "kcurv/cone.hpp"
#include "kcurv/linalg.hpp"
#include "kcurv/numeric_form.hpp"

namespace kcurv {

/// Radial chart φ(u) = X / F(X)^{1/d} with X = x + Σ u_k L_k around a point x
/// of W₁. In these coordinates the Hodge metric has the closed form
///
///   g_ij(u) = −F̃(X^{d−2}, L_i, L_j) / F(X) + ∂_iF(X) ∂_jF(X) / (d² F(X)²),
///
/// where ∂_iF(X) = ∇F(X)·L_i.
///
/// F is restricted once to span{x, L_1, ...} and all evaluations happen in
/// those local coordinates. Points far out towards the cone boundary have
/// large ambient coordinates, and evaluating F there directly gives rounding
/// noise that finite differences in u would amplify.
class RadialChart {
 public:
  /// `directions` holds the tangent vectors L_k as columns.
  RadialChart(NumericForm f, Vector origin, Matrix directions);
  RadialChart(NumericForm f, const TangentFrame& frame);

  Eigen::Index dim() const noexcept { return directions_.cols(); }
  const Vector& origin() const noexcept { return origin_; }
  const Matrix& directions() const noexcept { return directions_; }

  Vector point(const Vector& u) const;
  Matrix metric(const Vector& u) const;
  /// Metric together with its exact first derivatives, dg[k] = ∂g/∂u_k.
  Matrix metric_with_derivatives(const Vector& u, std::vector<Matrix>& dg) const;
  /// Columns ∂φ/∂u_i at u.
  Matrix pushforward(const Vector& u) const;

 private:
  /// (1, u) in the local coordinates.
  Vector local_point(const Vector& u) const;

  NumericForm local_;
  int degree_;
  Vector origin_;
  Matrix directions_;
};

Matrix chart_metric(const NumericForm& f, const Vector& x, const TangentFrame& frame, const Vector& u);

struct FDConfig {
  /// Base step h; the engine also evaluates h/2 and h/4.
  double step = 1e-3;
  /// If the error estimate at `step` is above accept_err·max(1, |K|), steps
  /// h/4, h/16, ... (up to `refinements` of them) are tried and the one with
  /// the smallest estimate wins.
  double accept_err = 1e-7;
  int refinements = 4;
  /// Samples whose Richardson error estimate exceeds this are refused.
  double max_err = 1e-3;
  /// Smallest allowed eigenvalue ratio of the tangent Gram matrix.
  double min_gram_ratio = 1e-6;
};

enum class CurvatureMethod { finite_difference, closed_form_cubic, surface_expansion };

std::string_view to_string(CurvatureMethod m) noexcept;

struct CurvatureSample {
  Vector point;
  std::array<Vector, 2> plane;
  double K = 0.0;
  double err_estimate = 0.0;
  CurvatureMethod method = CurvatureMethod::finite_difference;
};

/// Normalizes x onto W₁ and returns a metric-orthonormal tangent frame whose
/// first two vectors span the projection of span{L1, L2}.
TangentFrame plane_adapted_frame(const NumericForm& f, const Vector& x, const Vector& l1,
                                 const Vector& l2, const FDConfig& cfg = {});

CurvatureSample sectional_curvature_numeric(const NumericForm& f, const Vector& x, const Vector& l1,
                                            const Vector& l2, const FDConfig& cfg = {});

/// R_{abcd} in an orthonormal frame, normalized so that R(a,b,a,b) is the
/// sectional curvature of span{e_a, e_b}; for constant curvature K this is
/// K(δ_ac δ_bd − δ_ad δ_bc).
class CurvatureTensor {
 public:
  explicit CurvatureTensor(int dim);

  int dim() const noexcept { return dim_; }
  double& operator()(int a, int b, int c, int d) { return data_[index(a, b, c, d)]; }
  double operator()(int a, int b, int c, int d) const { return data_[index(a, b, c, d)]; }
  double sectional(int a, int b) const { return (*this)(a, b, a, b); }

  double err_estimate = 0.0;

 private:
  std::size_t index(int a, int b, int c, int d) const {
    return static_cast<std::size_t>(((a * dim_ + b) * dim_ + c) * dim_ + d);
  }

  int dim_;
  std::vector<double> data_;
};

CurvatureTensor curvature_tensor_numeric(const NumericForm& f, const Vector& x, const TangentFrame& frame,
                                         const FDConfig& cfg = {});

struct SurfaceConfig {
  /// Grid spacing of the exponential surface for the Brioschi stencil; the
  /// engine also evaluates half of it.
  double spacing = 0.05;
  /// Five-point difference step for the surface tangent vectors, capped at a
  /// quarter of the current spacing.
  double tangent_step = 1e-3;
  /// RK4 steps per geodesic shot.
  int geodesic_steps = 16;
  /// Spacing is halved when a geodesic shot fails or the two-spacing error
  /// estimate exceeds accept_err·max(1,|K|), up to this many times. The
  /// level with the smallest estimate wins; above max_err it is refused.
  int max_halvings = 9;
  double accept_err = 1e-6;
  double max_err = 1e-3;
};

/// Gauss curvature at 0 of the surface (t1, t2) ↦ exp_x(t1 e1 + t2 e2).
CurvatureSample sectional_curvature_surface(const NumericForm& f, const Vector& x, const Vector& l1,
                                            const Vector& l2, const SurfaceConfig& cfg = {});

}  // namespace kcurv
