#pragma once

#include <cstdint>
#include <vector>

#include "kcurv/form.hpp"
#include "kcurv/linalg.hpp"

namespace kcurv {

/// Value and partial derivatives of a form at one point, up to third order.
struct Jet {
  double value = 0.0;
  Vector grad;
  Matrix hess;
  /// third[k](i, j) = ∂³F/∂x_i∂x_j∂x_k; empty unless requested.
  std::vector<Matrix> third;
};

/// Floating-point image of a Form, laid out for repeated evaluation.
///
/// Implicitly constructible from a Form so the numeric geometry routines can be
/// called with either; hot loops should build one NumericForm and reuse it.
class NumericForm {
 public:
  NumericForm(const Form& f);  // NOLINT(google-explicit-constructor)

  int degree() const noexcept { return degree_; }
  int dim() const noexcept { return dim_; }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  Matrix hessian(const Vector& x) const;
  Jet jet(const Vector& x, int order) const;

  /// Σ v_i ∂F/∂x_i, in floating point.
  NumericForm directional_derivative(const Vector& v) const;

  /// G(w) = F(B w) for an r × n matrix B, expanded in floating point.
  NumericForm substitute(const Matrix& b) const;

 private:
  struct Term {
    double coef;
    std::vector<std::uint8_t> exps;
  };

  NumericForm(int degree, int dim, std::vector<Term> terms);
  void check(const Vector& x) const;
  std::vector<double> powers(const Vector& x) const;

  int degree_;
  int dim_;
  std::vector<Term> terms_;
};

}  // namespace kcurv
