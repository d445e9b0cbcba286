#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "kcurv/form.hpp"
#include "kcurv/linalg.hpp"
#include "kcurv/numeric_form.hpp"

namespace kcurv {

enum class ConeClass { index_cone, positive_cone_only, outside };

std::string_view to_string(ConeClass c) noexcept;

/// Relative eigenvalue band below which Q counts as degenerate.
inline constexpr double kSignatureTol = 1e-9;

/// A point of R^r with its cone data. For odd degree a point with F < 0 is
/// replaced by its negative before classification; `flipped` records that and
/// `x` then holds the negated representative.
struct ConePoint {
  Vector x;
  double value = 0.0;
  Vector grad;
  /// Hess F(x) / (d(d−1)), the bilinear form L ↦ F̃(x^{d−2}, L, L).
  Matrix q;
  int n_pos = 0;
  int n_neg = 0;
  ConeClass classification = ConeClass::outside;
  bool flipped = false;

  bool in_index_cone() const noexcept { return classification == ConeClass::index_cone; }
};

ConePoint classify(const NumericForm& f, const Vector& x, double tol = kSignatureTol);

/// Exact counterpart used for rational grids: index-cone membership after the
/// antipodal lift, decided by the exact inertia of the Hessian.
ConeClass classify_exact(const Form& f, const RationalVector& x);

/// x / F(x)^{1/d}, after the antipodal flip for odd d.
Vector normalize_to_level(const NumericForm& f, const Vector& x);

/// Euclidean-orthonormal basis of {L : ∇F(x)·L = 0}.
std::vector<Vector> tangent_basis(const NumericForm& f, const Vector& x);

/// Hodge pairing −F̃(x^{d−2}, L1, L2).
double metric(const NumericForm& f, const Vector& x, const Vector& l1, const Vector& l2);
Rational metric_exact(const Form& f, const RationalVector& x, const RationalVector& l1,
                      const RationalVector& l2);
/// Matrix of the pairing on all of R^r: −Hess F(x) / (d(d−1)).
Matrix metric_matrix(const NumericForm& f, const Vector& x);

/// Removes the radial component: L − (∇F·L / ∇F·x) x. This is the
/// metric-orthogonal projection onto the tangent space at x.
Vector project_to_tangent(const Vector& grad, const Vector& x, const Vector& l);

struct TangentFrame {
  ConePoint base;
  std::vector<Vector> vectors;
};

/// Metric-orthonormal frame of the tangent space at a point of W₁.
/// seed = 0 keeps the natural order of tangent_basis; other seeds apply a
/// seeded rotation first.
TangentFrame orthonormal_frame(const NumericForm& f, const Vector& x, std::uint64_t seed = 0);

/// Gram–Schmidt of `vectors` under the metric matrix `g`. Vectors whose residual
/// squared norm falls below `pivot_tol` (relative to their input norm) are
/// dropped; at most `max_count` vectors are returned.
std::vector<Vector> metric_gram_schmidt(const Matrix& g, const std::vector<Vector>& vectors,
                                        double pivot_tol, std::size_t max_count);

}  // namespace kcurv
