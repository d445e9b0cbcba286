#pragma once

#include <map>
#include <span>
#include <vector>

#include "kcurv/linalg.hpp"
#include "kcurv/rational.hpp"

namespace kcurv {

/// Sparse homogeneous polynomial with exact rational coefficients.
///
/// Terms are keyed by exponent vectors of length dim() whose entries add up to
/// degree(). Zero coefficients are never stored, and the std::map keeps the
/// exponents in lexicographic order, so two Forms compare equal exactly when
/// they are the same polynomial.
class Form {
 public:
  using Exponent = std::vector<int>;
  using TermMap = std::map<Exponent, Rational>;

  /// The zero form of the given degree in `dim` variables.
  Form(int degree, int dim);

  static Form constant(int dim, const Rational& c);
  /// x_i as a degree-1 form.
  static Form variable(int dim, int i);
  /// Linear form Σ c_i x_i.
  static Form linear(const RationalVector& coefficients);
  static Form monomial(const Exponent& exps, const Rational& c);

  int degree() const noexcept { return degree_; }
  int dim() const noexcept { return dim_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(const Exponent& exps) const;

  /// Adds c·x^exps, merging with an existing term and dropping zeros.
  Form& add_term(const Exponent& exps, const Rational& c);

  Form derivative(int i) const;
  /// Σ v_i ∂F/∂x_i.
  Form directional_derivative(const RationalVector& v) const;
  Form pow(int k) const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(const Rational& c);
  Form operator-() const;

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const Rational& c) { return a *= c; }
  friend Form operator*(const Rational& c, Form a) { return a *= c; }
  friend Form operator*(const Form& a, const Form& b);
  friend bool operator==(const Form& a, const Form& b) = default;

 private:
  void check_exponent(const Exponent& exps) const;

  int degree_;
  int dim_;
  TermMap terms_;
};

double eval(const Form& f, const Vector& x);
Rational eval_exact(const Form& f, const RationalVector& x);

Vector gradient(const Form& f, const Vector& x);
RationalVector gradient_exact(const Form& f, const RationalVector& x);

/// Unscaled second partials ∂²F/∂x_i∂x_j.
Matrix hessian_matrix(const Form& f, const Vector& x);
RationalMatrix hessian_matrix_exact(const Form& f, const RationalVector& x);

/// Symmetric multilinear polarization F̃(v_1,…,v_d) = D_{v_1}⋯D_{v_d}F / d!.
Rational polarize_exact(const Form& f, std::span<const RationalVector> vs);
double polarize(const Form& f, std::span<const Vector> vs);

/// F̃(D^{d−k}, L_1,…,L_k) with k = ls.size().
Rational contract_exact(const Form& f, const RationalVector& base, std::span<const RationalVector> ls);
double contract(const Form& f, const Vector& base, std::span<const Vector> ls);

/// det(∂²F/∂x_i∂x_j) as a form of degree dim·(degree − 2).
Form hessian_det_poly(const Form& f);

/// G(x) = F(M x).
Form change_of_variables(const Form& f, const RationalMatrix& m);

RationalVector to_rational(const Vector& x);
Vector to_double(const RationalVector& x);

}  // namespace kcurv
