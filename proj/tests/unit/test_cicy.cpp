#include <gtest/gtest.h>

#include <kcurv/aronhold.hpp>
#include <kcurv/cicy.hpp>

#include "test_util.hpp"

using namespace kcurv;

namespace {

// Full expansion in the variables (x_1..x_m, J_1..J_m), then read off the
// coefficient of J^n without any truncation.
Form expand_oracle(const CicyConfig& cfg) {
  const int m = static_cast<int>(cfg.ambient.size());
  int dim = 0;
  for (int n : cfg.ambient) dim += n;
  dim -= static_cast<int>(cfg.columns.size());
  Form d(2, 2 * m);
  for (int i = 0; i < m; ++i) d += Form::variable(2 * m, i) * Form::variable(2 * m, m + i);
  Form prod = d.pow(dim);
  for (const auto& col : cfg.columns) {
    Form lin(1, 2 * m);
    for (int i = 0; i < m; ++i) lin += Rational(col[static_cast<std::size_t>(i)]) * Form::variable(2 * m, m + i);
    prod = prod * lin;
  }
  Form out(dim, m);
  for (const auto& [e, c] : prod.terms()) {
    bool match = true;
    for (int i = 0; i < m; ++i) match = match && e[static_cast<std::size_t>(m + i)] == cfg.ambient[static_cast<std::size_t>(i)];
    if (match) out.add_term(Form::Exponent(e.begin(), e.begin() + m), c);
  }
  return out;
}

CicyConfig cicy1() { return {{3, 2, 2}, {{1, 1, 0}, {1, 1, 0}, {2, 1, 1}, {0, 0, 2}}}; }
CicyConfig cicy2() { return {{2, 2, 1}, {{1, 2, 0}, {2, 1, 2}}}; }

}  // namespace

TEST(CicyValidate, Examples) {
  const CicyInfo a = validate(cicy1());
  EXPECT_EQ(a.dim, 3);
  EXPECT_TRUE(a.calabi_yau);
  EXPECT_EQ(a.row_sums, (std::vector<int>{4, 3, 3}));
  const CicyInfo b = validate(cicy2());
  EXPECT_EQ(b.dim, 3);
  EXPECT_TRUE(b.calabi_yau);
  const CicyInfo c = validate({{1, 1, 1}, {}});
  EXPECT_EQ(c.dim, 3);
  EXPECT_FALSE(c.calabi_yau);
}

TEST(CicyValidate, Errors) {
  EXPECT_KCURV_ERROR(validate({{}, {}}), ErrorCode::invalid_argument);
  EXPECT_KCURV_ERROR(validate({{0, 2}, {}}), ErrorCode::invalid_argument);
  EXPECT_KCURV_ERROR(validate({{2, 2}, {{1, 1, 0}}}), ErrorCode::dimension_mismatch);
  EXPECT_KCURV_ERROR(validate({{2, 2}, {{-1, 2}}}), ErrorCode::invalid_argument);
  EXPECT_KCURV_ERROR(validate({{2, 2}, {{0, 0}}}), ErrorCode::invalid_argument);
  EXPECT_KCURV_ERROR(validate({{1, 1}, {{1, 1}, {1, 1}}}), ErrorCode::nonpositive_dimension);
}

TEST(CicyForm, SecondExample) {
  const Form f = intersection_form(cicy2());
  Form e(3, 3);
  e.add_term({2, 1, 0}, 12);
  e.add_term({1, 2, 0}, 6);
  e.add_term({2, 0, 1}, 6);
  e.add_term({0, 2, 1}, 6);
  e.add_term({1, 1, 1}, 30);
  EXPECT_EQ(f, e);
  EXPECT_EQ(f, expand_oracle(cicy2()));
}

TEST(CicyForm, ProductOfLines) {
  Form six(3, 3);
  six.add_term({1, 1, 1}, 6);
  EXPECT_EQ(intersection_form({{1, 1, 1}, {}}), six);
}

TEST(CicyForm, FirstExample) {
  const Form f = intersection_form(cicy1());
  EXPECT_EQ(f, expand_oracle(cicy1()));
  EXPECT_EQ(aronhold_S(f), Rational(4624));
  const BoundPolynomials bp = bound_polynomials(f);
  EXPECT_EQ(bp.upper.size(), 13u);
  EXPECT_EQ(bp.upper.degree(), 6);
  for (const auto& [e, c] : bp.upper.terms()) EXPECT_LT(c.sign(), 0);
}

TEST(CicyForm, MatchesExpansionOnSmallConfigs) {
  const std::vector<CicyConfig> cfgs = {
      {{4}, {{5}}},
      {{1, 3}, {{0, 2}, {2, 2}}},
      {{2, 3}, {{0, 3}, {3, 1}}},
      {{1, 1, 2}, {{1, 1, 1}, {1, 1, 2}}},
      {{2, 2}, {{3, 0}, {0, 3}}},
  };
  for (const auto& cfg : cfgs) {
    const Form f = intersection_form(cfg);
    EXPECT_EQ(f, expand_oracle(cfg));
    for (const auto& [e, c] : f.terms()) EXPECT_GT(c.sign(), 0);
  }
  // Quintic: 5·x³·... with one variable.
  EXPECT_EQ(intersection_form({{4}, {{5}}}).coefficient({3}), Rational(5));
}

TEST(CicyForm, SymmetricUnderFactorSwap) {
  const Form a = intersection_form({{2, 3}, {{0, 3}, {3, 1}}});
  const Form b = intersection_form({{3, 2}, {{3, 0}, {1, 3}}});
  EXPECT_EQ(change_of_variables(a, RationalMatrix::from_columns({{0, 1}, {1, 0}})), b);
}

TEST(CicyForm, SquareOfP1Factor) {
  // A P^1 factor contributes at most x_i^1.
  const Form f = intersection_form({{1, 1, 2}, {{1, 1, 1}, {1, 1, 2}}});
  for (const auto& [e, c] : f.terms()) {
    EXPECT_LE(e[0], 1);
    EXPECT_LE(e[1], 1);
  }
}

TEST(CicyParse, RoundTrip) {
  const CicyConfig c = parse_cicy("3,2,2", "1,1,0;1,1,0;2,1,1;0,0,2");
  EXPECT_EQ(c.ambient, cicy1().ambient);
  EXPECT_EQ(c.columns, cicy1().columns);
  EXPECT_KCURV_ERROR(parse_cicy("3,x,2", "1,1,0"), ErrorCode::parse_error);
  EXPECT_KCURV_ERROR(parse_cicy("3,2,2", "1,1,;0,0,2"), ErrorCode::parse_error);
  EXPECT_KCURV_ERROR(parse_cicy("", "1"), ErrorCode::parse_error);
}
