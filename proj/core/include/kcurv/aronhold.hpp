#pragma once

#include "kcurv/form.hpp"
#include "kcurv/linalg.hpp"
#include "kcurv/rational.hpp"

namespace kcurv {

/// Coefficients of a ternary cubic in a basis {L0, L1, L2} with L1, L2 spanning
/// ker ∇F(L0):
///
///   A x0³ − 3 x0 (p x1² + 2q x1x2 + r x2²) + a30 x1³ + 3 a21 x1²x2 + 3 a12 x1x2² + a03 x2³
struct ReducedCubic {
  Rational A, p, q, r;
  Rational a30, a21, a12, a03;
  RationalMatrix M;  // columns L0, L1, L2
  Rational det_m;

  Form reconstruct() const;
};

/// Kernel basis chosen deterministically from ∇F(L0).
ReducedCubic reduce_at_point(const Form& f, const RationalVector& l0);
ReducedCubic reduce_at_point(const Form& f, const RationalVector& l0, const RationalVector& l1,
                             const RationalVector& l2);

/// (pr − q²)² + A(p(a12² − a21 a03) + q(a30 a03 − a21 a12) + r(a21² − a30 a12)).
Rational reduced_S(const ReducedCubic& t);

/// S(F) = reduced_S / det(M)⁴ for the first usable L0 in a fixed search order.
Rational aronhold_S(const Form& f);
Rational aronhold_S(const Form& f, const RationalVector& l0);

struct CubicInvariants {
  Rational S;
  Form hessian;
};

CubicInvariants cubic_invariants(const Form& f);

struct ClosedFormOptions {
  /// When false, points outside the index cone are evaluated anyway.
  bool require_index_cone = true;
};

/// −9/4 + 6⁶ S F(x)² / (4 H(x)²).
double sectional_curvature_closed(const Form& f, const Vector& x, const ClosedFormOptions& opts = {});
double sectional_curvature_closed(const Form& f, const CubicInvariants& inv, const Vector& x,
                                  const ClosedFormOptions& opts = {});
Rational sectional_curvature_closed_exact(const Form& f, const RationalVector& x,
                                          const ClosedFormOptions& opts = {});
Rational sectional_curvature_closed_exact(const Form& f, const CubicInvariants& inv, const RationalVector& x,
                                          const ClosedFormOptions& opts = {});

/// −2 + A·(…)/(4(pr − q²)²), the curvature at the point L0.
Rational curvature_reduced(const ReducedCubic& t);

struct BoundPolynomials {
  /// 6⁶ S F² − 9 H²; R ≤ 0 where H ≠ 0 iff P_upper ≤ 0.
  Form upper;
  /// 6⁶ S F² + 3 H²; R ≥ −3 iff P_lower ≥ 0.
  Form lower;
};

BoundPolynomials bound_polynomials(const Form& f);
BoundPolynomials bound_polynomials(const Form& f, const CubicInvariants& inv);

/// H_red(1, 0, 0) − 216 A (pr − q²); zero for every tuple.
Rational hessian_identity_check(const ReducedCubic& t);

}  // namespace kcurv
