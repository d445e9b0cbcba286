#include "kcurv/cone.hpp"

#include <cmath>
#include <random>

#include "kcurv/error.hpp"

namespace kcurv {

std::string_view to_string(ConeClass c) noexcept {
  switch (c) {
    case ConeClass::index_cone:
      return "index_cone";
    case ConeClass::positive_cone_only:
      return "positive_cone_only";
    case ConeClass::outside:
      return "outside";
  }
  return "outside";
}

namespace {

double hessian_scale(int degree) { return static_cast<double>(degree) * (degree - 1); }

void require_quadratic_or_higher(int degree) {
  if (degree < 2) throw Error(ErrorCode::unsupported_form, "cone geometry needs degree >= 2");
}

}  // namespace

ConePoint classify(const NumericForm& f, const Vector& x, double tol) {
  require_quadratic_or_higher(f.degree());
  if (x.size() != f.dim()) throw Error(ErrorCode::dimension_mismatch, "classify");
  if (x.isZero(0.0)) throw Error(ErrorCode::zero_vector, "cannot classify the origin");

  ConePoint p;
  p.x = x;
  p.value = f.value(x);
  if (f.degree() % 2 == 1 && p.value < 0.0) {
    p.x = -x;
    p.value = -p.value;
    p.flipped = true;
  }
  const Jet j = f.jet(p.x, 2);
  p.grad = j.grad;
  p.q = j.hess / hessian_scale(f.degree());

  const Eigen::SelfAdjointEigenSolver<Matrix> eig(p.q, Eigen::EigenvaluesOnly);
  const Vector& lambda = eig.eigenvalues();
  const double scale = lambda.cwiseAbs().maxCoeff();
  bool degenerate = scale == 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] > tol * scale) {
      ++p.n_pos;
    } else if (lambda[i] < -tol * scale) {
      ++p.n_neg;
    } else {
      degenerate = true;
    }
  }

  if (!(p.value > 0.0)) {
    p.classification = ConeClass::outside;
    return p;
  }
  if (degenerate) {
    throw Error(ErrorCode::near_degenerate,
                "Hessian eigenvalue inside the tolerance band; point is too close to the cone boundary");
  }
  p.classification = (p.n_pos == 1 && p.n_neg == f.dim() - 1) ? ConeClass::index_cone
                                                               : ConeClass::positive_cone_only;
  return p;
}

ConeClass classify_exact(const Form& f, const RationalVector& x) {
  require_quadratic_or_higher(f.degree());
  Rational value = eval_exact(f, x);
  RationalVector rep = x;
  if (f.degree() % 2 == 1 && value.sign() < 0) {
    for (auto& c : rep) c = -c;
    value = -value;
  }
  if (value.sign() <= 0) return ConeClass::outside;
  const InertiaCounts in = exact_inertia(hessian_matrix_exact(f, rep));
  return (in.zero == 0 && in.positive == 1 && in.negative == f.dim() - 1) ? ConeClass::index_cone
                                                                          : ConeClass::positive_cone_only;
}

Vector normalize_to_level(const NumericForm& f, const Vector& x) {
  if (x.size() != f.dim()) throw Error(ErrorCode::dimension_mismatch, "normalize_to_level");
  double value = f.value(x);
  Vector rep = x;
  if (f.degree() % 2 == 1 && value < 0.0) {
    rep = -x;
    value = -value;
  }
  if (!(value > 0.0)) throw Error(ErrorCode::nonpositive_value, "F(x) <= 0 cannot be scaled to F = 1");
  return rep / std::pow(value, 1.0 / f.degree());
}

std::vector<Vector> tangent_basis(const NumericForm& f, const Vector& x) {
  const Vector grad = f.gradient(x);
  const double norm = grad.norm();
  if (norm == 0.0 || !std::isfinite(norm)) throw Error(ErrorCode::zero_gradient, "gradient vanishes");
  const Vector n = grad / norm;
  Eigen::Index pivot = 0;
  n.cwiseAbs().maxCoeff(&pivot);

  std::vector<Vector> basis;
  const Eigen::Index r = x.size();
  for (Eigen::Index i = 0; i < r; ++i) {
    if (i == pivot) continue;
    Vector v = Vector::Unit(r, i) - n[i] * n;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) v -= b.dot(v) * b;
      v -= n.dot(v) * n;
    }
    basis.push_back(v.normalized());
  }
  return basis;
}

double metric(const NumericForm& f, const Vector& x, const Vector& l1, const Vector& l2) {
  return l1.dot(metric_matrix(f, x) * l2);
}

Rational metric_exact(const Form& f, const RationalVector& x, const RationalVector& l1,
                      const RationalVector& l2) {
  const RationalMatrix h = hessian_matrix_exact(f, x);
  return -dot(l1, h.apply(l2)) / Rational(f.degree() * (f.degree() - 1));
}

Matrix metric_matrix(const NumericForm& f, const Vector& x) {
  require_quadratic_or_higher(f.degree());
  return -f.hessian(x) / hessian_scale(f.degree());
}

Vector project_to_tangent(const Vector& grad, const Vector& x, const Vector& l) {
  return l - (grad.dot(l) / grad.dot(x)) * x;
}

std::vector<Vector> metric_gram_schmidt(const Matrix& g, const std::vector<Vector>& vectors,
                                        double pivot_tol, std::size_t max_count) {
  std::vector<Vector> out;
  for (const auto& input : vectors) {
    if (out.size() == max_count) break;
    const double input_norm = input.dot(g * input);
    Vector v = input;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : out) v -= e.dot(g * v) * e;
    }
    const double norm_sq = v.dot(g * v);
    if (!(norm_sq > pivot_tol * std::abs(input_norm)) || !(norm_sq > 0.0)) continue;
    out.push_back(v / std::sqrt(norm_sq));
  }
  return out;
}

TangentFrame orthonormal_frame(const NumericForm& f, const Vector& x, std::uint64_t seed) {
  TangentFrame frame;
  frame.base = classify(f, x);
  if (!frame.base.in_index_cone() || frame.base.flipped) {
    throw Error(ErrorCode::not_in_index_cone, "orthonormal frame requested outside the index cone");
  }
  if (std::abs(frame.base.value - 1.0) > 1e-8) {
    throw Error(ErrorCode::not_on_level_set, "point is not on the level set F = 1");
  }

  std::vector<Vector> basis = tangent_basis(f, x);
  if (seed != 0) {
    const auto m = static_cast<Eigen::Index>(basis.size());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Matrix mix(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) mix(i, j) = normal(rng);
    const Matrix rot = Eigen::HouseholderQR<Matrix>(mix).householderQ();
    std::vector<Vector> mixed(basis.size(), Vector::Zero(x.size()));
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) mixed[i] += rot(j, i) * basis[j];
    basis = std::move(mixed);
  }

  const Matrix g = -frame.base.q;
  // Each basis vector is Euclidean-unit, so the pivot test is absolute.
  for (const auto& b : basis) {
    Vector v = b;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : frame.vectors) v -= e.dot(g * v) * e;
    }
    const double norm_sq = v.dot(g * v);
    if (!(norm_sq > 1e-12)) {
      throw Error(ErrorCode::degenerate_metric, "Gram–Schmidt pivot below 1e-12");
    }
    frame.vectors.push_back(v / std::sqrt(norm_sq));
  }
  return frame;
}

}  // namespace kcurv
