#include "kcurv/cicy.hpp"

#include <charconv>
#include <map>
#include <numeric>
#include <string>

#include "kcurv/error.hpp"

namespace kcurv {

CicyInfo validate(const CicyConfig& cfg) {
  const auto m = cfg.ambient.size();
  if (m == 0) throw Error(ErrorCode::invalid_argument, "empty ambient space");
  for (int n : cfg.ambient) {
    if (n < 1) throw Error(ErrorCode::invalid_argument, "ambient dimensions must be positive");
  }
  CicyInfo info;
  info.row_sums.assign(m, 0);
  for (const auto& col : cfg.columns) {
    if (col.size() != m) throw Error(ErrorCode::dimension_mismatch, "column length differs from ambient count");
    bool nonzero = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (col[i] < 0) throw Error(ErrorCode::invalid_argument, "multidegrees must be nonnegative");
      nonzero = nonzero || col[i] != 0;
      info.row_sums[i] += col[i];
    }
    if (!nonzero) throw Error(ErrorCode::invalid_argument, "zero column");
  }
  info.dim = std::accumulate(cfg.ambient.begin(), cfg.ambient.end(), 0) - static_cast<int>(cfg.columns.size());
  if (info.dim < 1) throw Error(ErrorCode::nonpositive_dimension, "complete intersection has dimension < 1");
  info.calabi_yau = true;
  for (std::size_t i = 0; i < m; ++i) info.calabi_yau = info.calabi_yau && info.row_sums[i] == cfg.ambient[i] + 1;
  return info;
}

namespace {

using Monomial = std::vector<int>;
using Poly = std::map<Monomial, mpz_class>;

bool within(const Monomial& e, const std::vector<int>& caps) {
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > caps[i]) return false;
  return true;
}

mpz_class multinomial(int total, const Monomial& k) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(total));
  for (int ki : k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(ki));
    out /= f;
  }
  return out;
}

void compositions(int total, std::size_t slots, const std::vector<int>& caps, Monomial& cur, std::size_t i,
                  std::vector<Monomial>& out) {
  if (i + 1 == slots) {
    if (total <= caps[i]) {
      cur[i] = total;
      out.push_back(cur);
    }
    return;
  }
  for (int k = 0; k <= std::min(total, caps[i]); ++k) {
    cur[i] = k;
    compositions(total - k, slots, caps, cur, i + 1, out);
  }
}

}  // namespace

Form intersection_form(const CicyConfig& cfg) {
  const CicyInfo info = validate(cfg);
  const std::vector<int>& caps = cfg.ambient;
  const std::size_t m = caps.size();

  // Product of the column classes in the truncated ring Z[J]/(J_i^{n_i+1}).
  Poly product{{Monomial(m, 0), 1}};
  for (const auto& col : cfg.columns) {
    Poly next;
    for (const auto& [e, c] : product) {
      for (std::size_t i = 0; i < m; ++i) {
        if (col[i] == 0) continue;
        Monomial e2 = e;
        ++e2[i];
        if (!within(e2, caps)) continue;
        next[e2] += c * col[i];
      }
    }
    product = std::move(next);
  }

  // (Σ x_i J_i)^dim contributes multinomial(dim; k) x^k J^k; pair each k with
  // the complementary J-monomial of the column product.
  Form f(info.dim, static_cast<int>(m));
  std::vector<Monomial> ks;
  Monomial cur(m, 0);
  compositions(info.dim, m, caps, cur, 0, ks);
  for (const auto& k : ks) {
    Monomial rest(m);
    for (std::size_t i = 0; i < m; ++i) rest[i] = caps[i] - k[i];
    const auto it = product.find(rest);
    if (it == product.end() || it->second == 0) continue;
    f.add_term(k, Rational(mpq_class(multinomial(info.dim, k) * it->second)));
  }
  return f;
}

namespace {

std::vector<int> parse_ints(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    int v = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw Error(ErrorCode::parse_error, "bad integer list: " + std::string(text));
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

CicyConfig parse_cicy(std::string_view ambient, std::string_view columns) {
  CicyConfig cfg;
  cfg.ambient = parse_ints(ambient);
  std::size_t pos = 0;
  while (pos < columns.size()) {
    const std::size_t semi = std::min(columns.find(';', pos), columns.size());
    const std::string_view col = columns.substr(pos, semi - pos);
    if (col.find_first_not_of(' ') != std::string_view::npos) cfg.columns.push_back(parse_ints(col));
    pos = semi + 1;
  }
  return cfg;
}

}  // namespace kcurv
