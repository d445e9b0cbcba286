#include "kcurv/form.hpp"

#include <bit>
#include <numeric>
#include <string>
#include <unordered_map>

#include "kcurv/error.hpp"
#include "kcurv/numeric_form.hpp"

namespace kcurv {

namespace {

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= Rational(i);
  return f;
}

void require_dim(const Form& f, std::size_t n, const char* what) {
  if (n != static_cast<std::size_t>(f.dim())) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(what) + ": expected " + std::to_string(f.dim()) + " coordinates, got " +
                    std::to_string(n));
  }
}

// x_i^k for k = 0..degree, per coordinate.
std::vector<RationalVector> power_table(const RationalVector& x, int degree) {
  std::vector<RationalVector> p(x.size(), RationalVector(static_cast<std::size_t>(degree) + 1));
  for (std::size_t i = 0; i < x.size(); ++i) {
    p[i][0] = 1;
    for (int k = 1; k <= degree; ++k) p[i][k] = p[i][k - 1] * x[i];
  }
  return p;
}

}  // namespace

Form::Form(int degree, int dim) : degree_(degree), dim_(dim) {
  if (degree < 0) throw Error(ErrorCode::invalid_argument, "negative degree");
  if (dim < 1) throw Error(ErrorCode::invalid_argument, "form needs at least one variable");
}

Form Form::constant(int dim, const Rational& c) {
  Form f(0, dim);
  f.add_term(Exponent(static_cast<std::size_t>(dim), 0), c);
  return f;
}

Form Form::variable(int dim, int i) {
  Form f(1, dim);
  Exponent e(static_cast<std::size_t>(dim), 0);
  e.at(static_cast<std::size_t>(i)) = 1;
  f.add_term(e, 1);
  return f;
}

Form Form::linear(const RationalVector& coefficients) {
  const int dim = static_cast<int>(coefficients.size());
  Form f(1, dim);
  for (int i = 0; i < dim; ++i) {
    Exponent e(coefficients.size(), 0);
    e[static_cast<std::size_t>(i)] = 1;
    f.add_term(e, coefficients[static_cast<std::size_t>(i)]);
  }
  return f;
}

Form Form::monomial(const Exponent& exps, const Rational& c) {
  Form f(std::accumulate(exps.begin(), exps.end(), 0), static_cast<int>(exps.size()));
  f.add_term(exps, c);
  return f;
}

void Form::check_exponent(const Exponent& exps) const {
  if (exps.size() != static_cast<std::size_t>(dim_)) {
    throw Error(ErrorCode::dimension_mismatch, "exponent vector length");
  }
  int total = 0;
  for (int e : exps) {
    if (e < 0) throw Error(ErrorCode::invalid_argument, "negative exponent");
    total += e;
  }
  if (total != degree_) {
    throw Error(ErrorCode::invalid_argument, "exponent vector sums to " + std::to_string(total) +
                                                 ", form degree is " + std::to_string(degree_));
  }
}

Rational Form::coefficient(const Exponent& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

Form& Form::add_term(const Exponent& exps, const Rational& c) {
  check_exponent(exps);
  if (c.is_zero()) return *this;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  return *this;
}

Form Form::derivative(int i) const {
  if (i < 0 || i >= dim_) throw Error(ErrorCode::dimension_mismatch, "derivative index");
  if (degree_ == 0) return Form(0, dim_);
  Form d(degree_ - 1, dim_);
  const auto idx = static_cast<std::size_t>(i);
  for (const auto& [e, c] : terms_) {
    if (e[idx] == 0) continue;
    Exponent de = e;
    --de[idx];
    d.add_term(de, c * Rational(e[idx]));
  }
  return d;
}

Form Form::directional_derivative(const RationalVector& v) const {
  require_dim(*this, v.size(), "directional derivative");
  Form d(degree_ == 0 ? 0 : degree_ - 1, dim_);
  if (degree_ == 0) return d;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0 || v[i].is_zero()) continue;
      Exponent de = e;
      --de[i];
      d.add_term(de, c * Rational(e[i]) * v[i]);
    }
  }
  return d;
}

Form Form::pow(int k) const {
  if (k < 0) throw Error(ErrorCode::invalid_argument, "negative power");
  Form result = constant(dim_, 1);
  Form base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Form& Form::operator+=(const Form& o) {
  if (o.dim_ != dim_) throw Error(ErrorCode::dimension_mismatch, "sum of forms");
  if (o.is_zero()) return *this;
  if (is_zero() && o.degree_ != degree_) {
    *this = o;
    return *this;
  }
  if (o.degree_ != degree_) throw Error(ErrorCode::invalid_argument, "sum of forms of different degree");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Form& Form::operator-=(const Form& o) { return *this += -o; }

Form& Form::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coef] : terms_) coef *= c;
  return *this;
}

Form Form::operator-() const {
  Form n = *this;
  for (auto& [e, c] : n.terms_) c = -c;
  return n;
}

Form operator*(const Form& a, const Form& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorCode::dimension_mismatch, "product of forms");
  Form p(a.degree_ + b.degree_, a.dim_);
  Form::Exponent e(static_cast<std::size_t>(a.dim_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      p.add_term(e, ca * cb);
    }
  }
  return p;
}

double eval(const Form& f, const Vector& x) {
  require_dim(f, static_cast<std::size_t>(x.size()), "eval");
  double total = 0.0;
  for (const auto& [e, c] : f.terms()) {
    double term = c.to_double();
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) term *= x[static_cast<Eigen::Index>(i)];
    }
    total += term;
  }
  return total;
}

Rational eval_exact(const Form& f, const RationalVector& x) {
  require_dim(f, x.size(), "eval_exact");
  const auto p = power_table(x, f.degree());
  Rational total = 0;
  for (const auto& [e, c] : f.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i) {
      if (e[i] != 0) term *= p[i][static_cast<std::size_t>(e[i])];
    }
    total += term;
  }
  return total;
}

Vector gradient(const Form& f, const Vector& x) { return NumericForm(f).gradient(x); }

RationalVector gradient_exact(const Form& f, const RationalVector& x) {
  require_dim(f, x.size(), "gradient");
  RationalVector g(x.size());
  for (int i = 0; i < f.dim(); ++i) g[static_cast<std::size_t>(i)] = eval_exact(f.derivative(i), x);
  return g;
}

Matrix hessian_matrix(const Form& f, const Vector& x) {
  if (f.degree() < 2) throw Error(ErrorCode::invalid_argument, "Hessian needs degree >= 2");
  return NumericForm(f).hessian(x);
}

RationalMatrix hessian_matrix_exact(const Form& f, const RationalVector& x) {
  if (f.degree() < 2) throw Error(ErrorCode::invalid_argument, "Hessian needs degree >= 2");
  require_dim(f, x.size(), "hessian");
  const auto n = x.size();
  RationalMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Form di = f.derivative(static_cast<int>(i));
    for (std::size_t j = i; j < n; ++j) {
      h(i, j) = eval_exact(di.derivative(static_cast<int>(j)), x);
      h(j, i) = h(i, j);
    }
  }
  return h;
}

Rational polarize_exact(const Form& f, std::span<const RationalVector> vs) {
  if (vs.size() != static_cast<std::size_t>(f.degree())) {
    throw Error(ErrorCode::wrong_argument_count, "polarization of a degree-" +
                                                     std::to_string(f.degree()) + " form takes " +
                                                     std::to_string(f.degree()) + " vectors");
  }
  const RationalVector origin(static_cast<std::size_t>(f.dim()));
  return contract_exact(f, origin, vs);
}

double polarize(const Form& f, std::span<const Vector> vs) {
  if (vs.size() != static_cast<std::size_t>(f.degree())) {
    throw Error(ErrorCode::wrong_argument_count, "polarization argument count");
  }
  return contract(f, Vector::Zero(f.dim()), vs);
}

Rational contract_exact(const Form& f, const RationalVector& base, std::span<const RationalVector> ls) {
  const int k = static_cast<int>(ls.size());
  if (k > f.degree()) throw Error(ErrorCode::wrong_argument_count, "too many contraction vectors");
  require_dim(f, base.size(), "contract");
  Form g = f;
  for (const auto& l : ls) g = g.directional_derivative(l);
  // D_{L_1}⋯D_{L_k}F (x) = d!/(d−k)! · F̃(x^{d−k}, L_1, …, L_k)
  return eval_exact(g, base) * factorial(f.degree() - k) / factorial(f.degree());
}

double contract(const Form& f, const Vector& base, std::span<const Vector> ls) {
  const int k = static_cast<int>(ls.size());
  if (k > f.degree()) throw Error(ErrorCode::wrong_argument_count, "too many contraction vectors");
  NumericForm g(f);
  for (const auto& l : ls) g = g.directional_derivative(l);
  double scale = 1.0;
  for (int i = f.degree() - k + 1; i <= f.degree(); ++i) scale *= i;
  return g.value(base) / scale;
}

Form hessian_det_poly(const Form& f) {
  if (f.degree() < 2) throw Error(ErrorCode::invalid_argument, "Hessian needs degree >= 2");
  const int n = f.dim();
  std::vector<std::vector<Form>> h(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Form di = f.derivative(i);
    for (int j = 0; j < n; ++j) h[static_cast<std::size_t>(i)].push_back(di.derivative(j));
  }

  // Laplace expansion along rows, memoized on the set of unused columns:
  // minor(S) is the determinant of rows n−|S|…n−1 restricted to columns S.
  std::unordered_map<unsigned, Form> memo;
  auto minor = [&](auto&& self, unsigned cols) -> Form {
    if (cols == 0) return Form::constant(n, 1);
    if (auto it = memo.find(cols); it != memo.end()) return it->second;
    const int row = n - std::popcount(cols);
    Form total((f.degree() - 2) * (n - row), n);
    int position = 0;
    for (int j = 0; j < n; ++j) {
      if (!(cols & (1u << j))) continue;
      const Form& entry = h[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
      if (!entry.is_zero()) {
        Form term = entry * self(self, cols & ~(1u << j));
        if (position % 2) term = -term;
        total += term;
      }
      ++position;
    }
    memo.emplace(cols, total);
    return total;
  };
  Form det = minor(minor, (1u << n) - 1);
  if (det.is_zero()) return Form(n * (f.degree() - 2), n);
  return det;
}

Form change_of_variables(const Form& f, const RationalMatrix& m) {
  const auto n = static_cast<std::size_t>(f.dim());
  if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::dimension_mismatch, "change of variables");
  // powers[i][k] = (Σ_j M_ij x_j)^k
  std::vector<std::vector<Form>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = m(i, j);
    const Form li = Form::linear(row);
    powers[i].push_back(Form::constant(f.dim(), 1));
    for (int k = 1; k <= f.degree(); ++k) powers[i].push_back(powers[i].back() * li);
  }
  Form g(f.degree(), f.dim());
  for (const auto& [e, c] : f.terms()) {
    Form term = Form::constant(f.dim(), c);
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] != 0) term = term * powers[i][static_cast<std::size_t>(e[i])];
    }
    g += term;
  }
  return g;
}

RationalVector to_rational(const Vector& x) {
  RationalVector r(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) r[static_cast<std::size_t>(i)] = Rational::from_double(x[i]);
  return r;
}

Vector to_double(const RationalVector& x) {
  Vector v(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) v[static_cast<Eigen::Index>(i)] = x[i].to_double();
  return v;
}

}  // namespace kcurv
