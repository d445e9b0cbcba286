#include "kcurv/numeric_form.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "kcurv/error.hpp"

namespace kcurv {

NumericForm::NumericForm(const Form& f) : degree_(f.degree()), dim_(f.dim()) {
  if (f.degree() > 255) throw Error(ErrorCode::invalid_argument, "degree too large");
  terms_.reserve(f.size());
  for (const auto& [e, c] : f.terms()) {
    Term t{c.to_double(), {}};
    t.exps.assign(e.begin(), e.end());
    terms_.push_back(std::move(t));
  }
}

NumericForm::NumericForm(int degree, int dim, std::vector<Term> terms)
    : degree_(degree), dim_(dim), terms_(std::move(terms)) {}

void NumericForm::check(const Vector& x) const {
  if (x.size() != dim_) {
    throw Error(ErrorCode::dimension_mismatch, "expected " + std::to_string(dim_) +
                                                   " coordinates, got " + std::to_string(x.size()));
  }
}

// Row-major table p[i * (degree+1) + k] = x_i^k.
std::vector<double> NumericForm::powers(const Vector& x) const {
  const int stride = degree_ + 1;
  std::vector<double> p(static_cast<std::size_t>(dim_ * stride));
  for (int i = 0; i < dim_; ++i) {
    double* row = &p[static_cast<std::size_t>(i * stride)];
    row[0] = 1.0;
    for (int k = 1; k <= degree_; ++k) row[k] = row[k - 1] * x[i];
  }
  return p;
}

double NumericForm::value(const Vector& x) const {
  check(x);
  const auto p = powers(x);
  const int stride = degree_ + 1;
  double total = 0.0;
  for (const auto& t : terms_) {
    double term = t.coef;
    for (int i = 0; i < dim_; ++i) term *= p[static_cast<std::size_t>(i * stride + t.exps[i])];
    total += term;
  }
  return total;
}

Vector NumericForm::gradient(const Vector& x) const { return jet(x, 1).grad; }

Matrix NumericForm::hessian(const Vector& x) const { return jet(x, 2).hess; }

Jet NumericForm::jet(const Vector& x, int order) const {
  check(x);
  const auto p = powers(x);
  const int stride = degree_ + 1;
  Jet out;
  out.grad = Vector::Zero(dim_);
  if (order >= 2) out.hess = Matrix::Zero(dim_, dim_);
  if (order >= 3) out.third.assign(static_cast<std::size_t>(dim_), Matrix::Zero(dim_, dim_));

  // Derivative of c·∏x_i^{e_i} with multi-index alpha: c·∏ e_i!/(e_i−α_i)!·x_i^{e_i−α_i}.
  std::vector<int> alpha(static_cast<std::size_t>(dim_), 0);
  auto derivative = [&](const Term& t) {
    double v = t.coef;
    for (int i = 0; i < dim_; ++i) {
      const int e = t.exps[i];
      const int a = alpha[static_cast<std::size_t>(i)];
      if (a > e) return 0.0;
      for (int k = 0; k < a; ++k) v *= (e - k);
      v *= p[static_cast<std::size_t>(i * stride + e - a)];
    }
    return v;
  };

  for (const auto& t : terms_) {
    out.value += derivative(t);
    for (int i = 0; i < dim_; ++i) {
      if (t.exps[i] == 0) continue;
      ++alpha[i];
      out.grad[i] += derivative(t);
      if (order >= 2) {
        for (int j = i; j < dim_; ++j) {
          if (t.exps[j] == 0) continue;
          ++alpha[j];
          const double hij = derivative(t);
          out.hess(i, j) += hij;
          if (order >= 3) {
            for (int k = j; k < dim_; ++k) {
              if (t.exps[k] == 0) continue;
              ++alpha[k];
              out.third[k](i, j) += derivative(t);
              --alpha[k];
            }
          }
          --alpha[j];
        }
      }
      --alpha[i];
    }
  }
  if (order >= 2) out.hess = Matrix(out.hess.selfadjointView<Eigen::Upper>());
  if (order >= 3) {
    // only sorted triples i <= j <= k were accumulated; copy to the rest
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k) {
          int s[3] = {i, j, k};
          std::sort(s, s + 3);
          out.third[k](i, j) = out.third[s[2]](s[0], s[1]);
        }
  }
  return out;
}

NumericForm NumericForm::directional_derivative(const Vector& v) const {
  check(v);
  if (degree_ == 0) return NumericForm(0, dim_, {});
  std::map<std::vector<std::uint8_t>, double> merged;
  for (const auto& t : terms_) {
    for (int i = 0; i < dim_; ++i) {
      if (t.exps[i] == 0 || v[i] == 0.0) continue;
      auto e = t.exps;
      --e[i];
      merged[e] += t.coef * t.exps[i] * v[i];
    }
  }
  std::vector<Term> terms;
  terms.reserve(merged.size());
  for (auto& [e, c] : merged) terms.push_back({c, e});
  return NumericForm(degree_ - 1, dim_, std::move(terms));
}

namespace {

using Sparse = std::map<std::vector<std::uint8_t>, double>;

Sparse multiply(const Sparse& a, const Sparse& b) {
  Sparse out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      auto e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint8_t>(e[i] + eb[i]);
      out[e] += ca * cb;
    }
  return out;
}

}  // namespace

NumericForm NumericForm::substitute(const Matrix& b) const {
  if (b.rows() != dim_) throw Error(ErrorCode::dimension_mismatch, "substitution matrix has the wrong row count");
  const auto n = static_cast<std::size_t>(b.cols());
  const std::vector<std::uint8_t> zero(n, 0);

  // powers[i][k] = (row i of B · w)^k
  std::vector<std::vector<Sparse>> powers(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    int top = 0;
    for (const auto& t : terms_) top = std::max<int>(top, t.exps[static_cast<std::size_t>(i)]);
    Sparse lin;
    for (std::size_t a = 0; a < n; ++a) {
      if (b(i, static_cast<Eigen::Index>(a)) == 0.0) continue;
      auto e = zero;
      e[a] = 1;
      lin[e] = b(i, static_cast<Eigen::Index>(a));
    }
    auto& row = powers[static_cast<std::size_t>(i)];
    row.push_back(Sparse{{zero, 1.0}});
    for (int k = 1; k <= top; ++k) row.push_back(multiply(row.back(), lin));
  }

  Sparse total;
  for (const auto& t : terms_) {
    Sparse acc{{zero, t.coef}};
    for (int i = 0; i < dim_; ++i) {
      const int e = t.exps[static_cast<std::size_t>(i)];
      if (e > 0) acc = multiply(acc, powers[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)]);
    }
    for (const auto& [e, c] : acc) total[e] += c;
  }
  std::vector<Term> terms;
  terms.reserve(total.size());
  for (auto& [e, c] : total)
    if (c != 0.0) terms.push_back({c, e});
  return NumericForm(degree_, static_cast<int>(n), std::move(terms));
}

}  // namespace kcurv
