#include "kcurv/fixtures.hpp"

#include <algorithm>
#include <numeric>

#include "kcurv/error.hpp"

namespace kcurv::fixtures {

Form diagonal(int n, int r) {
  if (n < 1 || r < 1) throw Error(ErrorCode::invalid_argument, "diagonal form needs n, r >= 1");
  Form f(n, r);
  for (int i = 0; i < r; ++i) {
    Form::Exponent e(static_cast<std::size_t>(r), 0);
    e[static_cast<std::size_t>(i)] = n;
    f.add_term(e, i == 0 ? Rational(1) : Rational(-1));
  }
  return f;
}

Form lorentzian(int r) { return diagonal(2, r); }

Form nodal_cubic() {
  Form f(3, 3);
  f.add_term({0, 3, 0}, 1);
  f.add_term({1, 2, 0}, 1);
  f.add_term({1, 0, 2}, -1);
  return f;
}

Form elliptic_cubic() {
  Form f(3, 3);
  f.add_term({0, 3, 0}, 1);
  f.add_term({2, 1, 0}, -1);
  f.add_term({3, 0, 0}, 1);
  f.add_term({1, 0, 2}, -1);
  return f;
}

Form three_lines() { return Form::monomial({1, 1, 1}, 6); }

Form concurrent_lines() {
  Form f(3, 3);
  f.add_term({2, 1, 0}, 1);
  f.add_term({1, 2, 0}, 1);
  return f;
}

namespace {

// Complex-valued linear form in the real coordinates: re + i·im.
struct ComplexForm {
  Form re;
  Form im;
};

ComplexForm mul(const ComplexForm& a, const ComplexForm& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

}  // namespace

Form hermitian_determinant(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "hermitian_determinant needs n >= 1");
  const int r = n * n;
  // entry[i][j] as a complex linear form.
  std::vector<std::vector<ComplexForm>> entry(static_cast<std::size_t>(n));
  const Form zero(1, r);
  int next = n;
  for (int i = 0; i < n; ++i) entry[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(n), {zero, zero});
  for (int i = 0; i < n; ++i) entry[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)].re = Form::variable(r, i);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Form re = Form::variable(r, next++);
      const Form im = Form::variable(r, next++);
      entry[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = {re, im};
      entry[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = {re, -im};
    }
  }

  // Leibniz expansion; the imaginary part cancels for hermitian matrices.
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Form det(n, r);
  do {
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) inversions += perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)];
    ComplexForm term = entry[0][static_cast<std::size_t>(perm[0])];
    for (int a = 1; a < n; ++a) {
      term = mul(term, entry[static_cast<std::size_t>(a)][static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])]);
    }
    det += inversions % 2 == 0 ? term.re : -term.re;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

}  // namespace kcurv::fixtures
