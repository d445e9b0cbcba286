#include "kcurv/aronhold.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "kcurv/cone.hpp"
#include "kcurv/error.hpp"

namespace kcurv {

namespace {

void require_ternary_cubic(const Form& f) {
  if (f.degree() != 3 || f.dim() != 3) throw Error(ErrorCode::unsupported_form, "expected a ternary cubic");
}

Rational tilde(const Form& f, const RationalVector& a, const RationalVector& b, const RationalVector& c) {
  const std::array<RationalVector, 3> vs{a, b, c};
  return polarize_exact(f, vs);
}

/// Scales v to a primitive integer vector, keeping its direction.
RationalVector primitive(const RationalVector& v) {
  mpz_class lcm = 1;
  for (const auto& c : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get().get_den_mpz_t());
  mpz_class g = 0;
  std::vector<mpz_class> ints;
  for (const auto& c : v) {
    const mpq_class scaled = c.get() * lcm;
    ints.push_back(scaled.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints.back().get_mpz_t());
  }
  RationalVector out;
  for (const auto& n : ints) out.emplace_back(mpq_class(g == 0 ? n : mpz_class(n / g)));
  return out;
}

Rational fourth_power(const Rational& x) { return pow(x, 4); }

}  // namespace

Form ReducedCubic::reconstruct() const {
  Form f(3, 3);
  f.add_term({3, 0, 0}, A);
  f.add_term({1, 2, 0}, Rational(-3) * p);
  f.add_term({1, 1, 1}, Rational(-6) * q);
  f.add_term({1, 0, 2}, Rational(-3) * r);
  f.add_term({0, 3, 0}, a30);
  f.add_term({0, 2, 1}, Rational(3) * a21);
  f.add_term({0, 1, 2}, Rational(3) * a12);
  f.add_term({0, 0, 3}, a03);
  return f;
}

ReducedCubic reduce_at_point(const Form& f, const RationalVector& l0, const RationalVector& l1,
                             const RationalVector& l2) {
  require_ternary_cubic(f);
  if (l0.size() != 3 || l1.size() != 3 || l2.size() != 3) {
    throw Error(ErrorCode::dimension_mismatch, "reduce_at_point");
  }
  const RationalVector g = gradient_exact(f, l0);
  if (std::all_of(g.begin(), g.end(), [](const Rational& c) { return c.is_zero(); })) {
    throw Error(ErrorCode::singular_point, "gradient vanishes at L0");
  }
  if (!dot(g, l1).is_zero() || !dot(g, l2).is_zero()) {
    throw Error(ErrorCode::invalid_argument, "L1, L2 must lie in the kernel of grad F(L0)");
  }
  ReducedCubic t;
  t.M = RationalMatrix::from_columns({l0, l1, l2});
  t.det_m = t.M.det();
  if (t.det_m.is_zero()) throw Error(ErrorCode::singular_point, "basis L0, L1, L2 is degenerate");
  t.A = eval_exact(f, l0);
  t.p = -tilde(f, l0, l1, l1);
  t.q = -tilde(f, l0, l1, l2);
  t.r = -tilde(f, l0, l2, l2);
  t.a30 = eval_exact(f, l1);
  t.a21 = tilde(f, l1, l1, l2);
  t.a12 = tilde(f, l1, l2, l2);
  t.a03 = eval_exact(f, l2);
  return t;
}

ReducedCubic reduce_at_point(const Form& f, const RationalVector& l0) {
  require_ternary_cubic(f);
  if (l0.size() != 3) throw Error(ErrorCode::dimension_mismatch, "reduce_at_point");
  const RationalVector g = gradient_exact(f, l0);
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (abs(g[i]) > abs(g[pivot])) pivot = i;
  }
  if (g[pivot].is_zero()) throw Error(ErrorCode::singular_point, "gradient vanishes at L0");
  std::vector<RationalVector> kernel;
  for (std::size_t j = 0; j < 3; ++j) {
    if (j == pivot) continue;
    RationalVector v(3, Rational(0));
    v[j] = g[pivot];
    v[pivot] = -g[j];
    kernel.push_back(primitive(v));
  }
  return reduce_at_point(f, l0, kernel[0], kernel[1]);
}

Rational reduced_S(const ReducedCubic& t) {
  const Rational disc = t.p * t.r - t.q * t.q;
  const Rational rest = t.p * (t.a12 * t.a12 - t.a21 * t.a03) + t.q * (t.a30 * t.a03 - t.a21 * t.a12) +
                        t.r * (t.a21 * t.a21 - t.a30 * t.a12);
  return disc * disc + t.A * rest;
}

Rational aronhold_S(const Form& f, const RationalVector& l0) {
  const ReducedCubic t = reduce_at_point(f, l0);
  return reduced_S(t) / fourth_power(t.det_m);
}

Rational aronhold_S(const Form& f) {
  require_ternary_cubic(f);
  std::vector<RationalVector> order{
      {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1},
  };
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 3);
  for (int i = 0; i < 2000; ++i) order.push_back({Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                                                  Rational(num(rng), den(rng))});
  // L0 must have F(L0) ≠ 0, otherwise L0 lies in its own kernel and M is singular.
  for (const auto& l0 : order) {
    if (eval_exact(f, l0).is_zero()) continue;
    return aronhold_S(f, l0);
  }
  throw Error(ErrorCode::no_smooth_point_found, "no L0 with F(L0) != 0 in the search budget");
}

CubicInvariants cubic_invariants(const Form& f) { return {aronhold_S(f), hessian_det_poly(f)}; }

namespace {

double magnitude_scale(const Form& f, const Vector& x) {
  double s = 0.0;
  for (const auto& [e, c] : f.terms()) {
    double m = std::abs(c.to_double());
    for (std::size_t i = 0; i < e.size(); ++i) m *= std::pow(std::abs(x[static_cast<Eigen::Index>(i)]), e[i]);
    s += m;
  }
  return s;
}

}  // namespace

double sectional_curvature_closed(const Form& f, const CubicInvariants& inv, const Vector& x,
                                  const ClosedFormOptions& opts) {
  require_ternary_cubic(f);
  if (x.size() != 3) throw Error(ErrorCode::dimension_mismatch, "sectional_curvature_closed");
  const double h = eval(inv.hessian, x);
  const double scale = magnitude_scale(inv.hessian, x);
  if (!(std::abs(h) > 1e-12 * scale)) throw Error(ErrorCode::hessian_zero, "Hessian vanishes at the point");
  if (opts.require_index_cone && !classify(f, x).in_index_cone()) {
    throw Error(ErrorCode::not_in_index_cone, "point is not in the index cone");
  }
  const double fx = eval(f, x);
  return -2.25 + 46656.0 * inv.S.to_double() * fx * fx / (4.0 * h * h);
}

double sectional_curvature_closed(const Form& f, const Vector& x, const ClosedFormOptions& opts) {
  return sectional_curvature_closed(f, cubic_invariants(f), x, opts);
}

Rational sectional_curvature_closed_exact(const Form& f, const CubicInvariants& inv, const RationalVector& x,
                                          const ClosedFormOptions& opts) {
  require_ternary_cubic(f);
  if (x.size() != 3) throw Error(ErrorCode::dimension_mismatch, "sectional_curvature_closed_exact");
  const Rational h = eval_exact(inv.hessian, x);
  if (h.is_zero()) throw Error(ErrorCode::hessian_zero, "Hessian vanishes at the point");
  if (opts.require_index_cone && classify_exact(f, x) != ConeClass::index_cone) {
    throw Error(ErrorCode::not_in_index_cone, "point is not in the index cone");
  }
  const Rational fx = eval_exact(f, x);
  return Rational(-9, 4) + Rational(46656) * inv.S * fx * fx / (Rational(4) * h * h);
}

Rational sectional_curvature_closed_exact(const Form& f, const RationalVector& x, const ClosedFormOptions& opts) {
  return sectional_curvature_closed_exact(f, cubic_invariants(f), x, opts);
}

Rational curvature_reduced(const ReducedCubic& t) {
  const Rational disc = t.p * t.r - t.q * t.q;
  if (disc.is_zero()) throw Error(ErrorCode::degenerate_metric, "pr - q^2 = 0 at L0");
  const Rational rest = t.p * (t.a12 * t.a12 - t.a21 * t.a03) + t.q * (t.a30 * t.a03 - t.a21 * t.a12) +
                        t.r * (t.a21 * t.a21 - t.a30 * t.a12);
  return Rational(-2) + t.A * rest / (Rational(4) * disc * disc);
}

BoundPolynomials bound_polynomials(const Form& f, const CubicInvariants& inv) {
  require_ternary_cubic(f);
  const Form sf2 = Rational(46656) * inv.S * (f * f);
  const Form h2 = inv.hessian * inv.hessian;
  return {sf2 - Rational(9) * h2, sf2 + Rational(3) * h2};
}

BoundPolynomials bound_polynomials(const Form& f) { return bound_polynomials(f, cubic_invariants(f)); }

Rational hessian_identity_check(const ReducedCubic& t) {
  const Form h = hessian_det_poly(t.reconstruct());
  return eval_exact(h, {1, 0, 0}) - Rational(216) * t.A * (t.p * t.r - t.q * t.q);
}

}  // namespace kcurv
