#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "kcurv/rational.hpp"

namespace kcurv {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Dense row-major matrix of exact rationals. Only what the exact code paths
/// need: construction, element access, products and the determinant.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t n);
  /// Matrix whose j-th column is columns[j].
  static RationalMatrix from_columns(const std::vector<RationalVector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalVector column(std::size_t j) const;
  RationalVector apply(const RationalVector& v) const;
  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalMatrix transpose() const;
  Rational det() const;
  Matrix to_double() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Coefficients c_0..c_n of det(t·I − A) = Σ c_k t^k (c_n = 1), exact.
RationalVector characteristic_polynomial(const RationalMatrix& a);

struct InertiaCounts {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Exact inertia of a rational symmetric matrix. All roots of its
/// characteristic polynomial are real, so Descartes' rule of signs is exact.
InertiaCounts exact_inertia(const RationalMatrix& symmetric);

Rational dot(const RationalVector& a, const RationalVector& b);

}  // namespace kcurv
