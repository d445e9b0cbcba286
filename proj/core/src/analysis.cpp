#include "kcurv/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "kcurv/aronhold.hpp"
#include "kcurv/cone.hpp"
#include "kcurv/error.hpp"
#include "kcurv/form_io.hpp"

namespace kcurv {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

std::string hex(std::uint64_t h) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

json to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

Vector gaussian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

/// Runs body(j) for j in [begin, end) on `threads` workers.
template <class Body>
void parallel_for(long begin, long end, int threads, Body&& body) {
  if (threads <= 1 || end - begin <= 1) {
    for (long j = begin; j < end; ++j) body(j);
    return;
  }
  std::atomic<long> next{begin};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (long j = next++; j < end; j = next++) body(j);
    });
  }
  for (auto& th : pool) th.join();
}

bool is_ternary_cubic(const Form& f) { return f.degree() == 3 && f.dim() == 3; }

}  // namespace

int default_threads() {
  if (const char* env = std::getenv("KCURV_THREADS")) {
    int v = 0;
    const std::string_view s(env);
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && end == s.data() + s.size() && v >= 1) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string to_string(const RegionSpec& r) {
  if (r.kind == RegionSpec::Kind::orthant) return "orthant";
  std::ostringstream s;
  s << "ball(" << r.radius << ")";
  return s.str();
}

RegionSpec parse_region(const std::string& text) {
  RegionSpec r;
  if (text == "orthant") return r;
  if (text == "ball") {
    r.kind = RegionSpec::Kind::ball;
    return r;
  }
  if (text.rfind("ball(", 0) == 0 && text.back() == ')') {
    r.kind = RegionSpec::Kind::ball;
    const std::string inner = text.substr(5, text.size() - 6);
    char* end = nullptr;
    r.radius = std::strtod(inner.c_str(), &end);
    if (end != inner.c_str() + inner.size() || !(r.radius > 0.0)) {
      throw Error(ErrorCode::parse_error, "bad ball radius: " + text);
    }
    return r;
  }
  throw Error(ErrorCode::parse_error, "unknown region: " + text);
}

// ---------------------------------------------------------------- scan

namespace {

struct Attempt {
  enum class Outcome { rejected, skipped, evaluated };
  Outcome outcome = Outcome::rejected;
  CurvatureSample sample;
  bool compared = false;
  double closed = 0.0;
};

Attempt run_attempt(const NumericForm& nf, const Form& f, const std::optional<CubicInvariants>& inv,
                    const ScanOptions& opts, long j) {
  Attempt a;
  std::mt19937_64 rng = substream(opts.seed, static_cast<std::uint64_t>(j));
  const int r = nf.dim();
  Vector x(r);
  if (opts.region.kind == RegionSpec::Kind::orthant) {
    std::exponential_distribution<double> expo(1.0);
    for (int i = 0; i < r; ++i) x[i] = expo(rng);
  } else {
    x = gaussian(rng, r);
    x *= opts.region.radius / x.norm();
  }
  const Vector l1 = gaussian(rng, r);
  const Vector l2 = gaussian(rng, r);

  try {
    if (!classify(nf, x).in_index_cone()) return a;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::near_degenerate) {
      a.outcome = Attempt::Outcome::skipped;
      return a;
    }
    throw;
  }
  try {
    a.sample = sectional_curvature_numeric(nf, x, l1, l2, opts.fd);
    a.outcome = Attempt::Outcome::evaluated;
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::ill_conditioned:
      case ErrorCode::degenerate_plane:
      case ErrorCode::near_degenerate:
      case ErrorCode::chart_exit:
      case ErrorCode::not_in_index_cone:
        a.outcome = Attempt::Outcome::skipped;
        return a;
      default:
        throw;
    }
  }
  if (inv) {
    try {
      a.closed = sectional_curvature_closed(f, *inv, a.sample.point, {.require_index_cone = false});
      a.compared = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::hessian_zero) throw;
    }
  }
  return a;
}

}  // namespace

ScanReport scan(const Form& f, const ScanOptions& opts) {
  if (opts.samples < 1) throw Error(ErrorCode::invalid_argument, "scan needs at least one sample");
  if (f.dim() < 3 || f.degree() < 2) throw Error(ErrorCode::unsupported_form, "scan needs r >= 3 and d >= 2");
  const NumericForm nf(f);
  std::optional<CubicInvariants> inv;
  if (is_ternary_cubic(f)) inv = cubic_invariants(f);
  const int threads = opts.threads > 0 ? opts.threads : default_threads();

  ScanReport rep;
  rep.form_hash = form_hash(f);
  rep.degree = f.degree();
  rep.dim = f.dim();
  rep.region = opts.region;
  rep.samples = opts.samples;
  rep.seed = opts.seed;
  rep.lower_bound = -0.5 * f.degree() * (f.degree() - 1);
  rep.upper_bound = 0.0;
  rep.closed_form_checked = inv.has_value();
  rep.k_min = std::numeric_limits<double>::infinity();
  rep.k_max = -std::numeric_limits<double>::infinity();

  const long budget = 100L * opts.samples;
  const long batch = std::max<long>(64, 4L * threads);
  int accepted = 0;
  long next = 0;
  while (accepted < opts.samples && next < budget) {
    const long end = std::min(budget, next + batch);
    std::vector<Attempt> results(static_cast<std::size_t>(end - next));
    parallel_for(next, end, threads,
                 [&](long j) { results[static_cast<std::size_t>(j - next)] = run_attempt(nf, f, inv, opts, j); });
    for (long j = next; j < end && accepted < opts.samples; ++j) {
      const Attempt& a = results[static_cast<std::size_t>(j - next)];
      rep.attempts = j + 1;
      if (a.outcome == Attempt::Outcome::rejected) continue;
      const int index = accepted++;
      if (a.outcome == Attempt::Outcome::skipped) {
        ++rep.skipped;
        continue;
      }
      ++rep.evaluated;
      const CurvatureSample& s = a.sample;
      rep.k_min = std::min(rep.k_min, s.K);
      rep.k_max = std::max(rep.k_max, s.K);
      rep.max_err = std::max(rep.max_err, s.err_estimate);
      const double tol = std::max(1e-6, 10.0 * s.err_estimate);
      if (s.K < rep.lower_bound - tol || s.K > rep.upper_bound + tol) {
        rep.violations.push_back({index, s.point, s.plane, s.K, s.err_estimate});
      }
      if (a.compared) {
        ++rep.closed_form_compared;
        const double diff = std::abs(s.K - a.closed);
        rep.closed_form_max_diff = std::max(rep.closed_form_max_diff, diff);
        if (diff > std::max(opts.closed_form_floor, 10.0 * s.err_estimate)) {
          rep.closed_form_mismatches.push_back({index, s.K, a.closed, s.err_estimate});
        }
      }
    }
    next = end;
  }
  if (accepted == 0) throw Error(ErrorCode::region_empty, "no index-cone point in " + std::to_string(budget) + " attempts");
  if (rep.evaluated == 0) {
    rep.k_min = rep.k_max = 0.0;
  }
  return rep;
}

std::string scan_report_json(const ScanReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["form_hash"] = hex(r.form_hash);
  j["degree"] = r.degree;
  j["dim"] = r.dim;
  j["region"] = to_string(r.region);
  j["sampling"] = r.region.kind == RegionSpec::Kind::orthant
                      ? "coordinates i.i.d. Exp(1); planes from two i.i.d. Gaussian vectors"
                      : "uniform directions on the sphere, antipodal lift for odd degree; planes Gaussian";
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["attempts"] = r.attempts;
  j["evaluated"] = r.evaluated;
  j["skipped"] = r.skipped;
  j["K_min"] = r.k_min;
  j["K_max"] = r.k_max;
  j["max_err"] = r.max_err;
  j["bounds"] = {r.lower_bound, r.upper_bound};
  json v = json::array();
  for (const auto& x : r.violations) {
    v.push_back({{"index", x.index},
                 {"point", to_json(x.point)},
                 {"plane", {to_json(x.plane[0]), to_json(x.plane[1])}},
                 {"K", x.K},
                 {"err", x.err}});
  }
  j["violations"] = v;
  json c;
  c["checked"] = r.closed_form_checked;
  c["compared"] = r.closed_form_compared;
  c["max_abs_diff"] = r.closed_form_max_diff;
  json m = json::array();
  for (const auto& x : r.closed_form_mismatches) {
    m.push_back({{"index", x.index}, {"K_numeric", x.K_numeric}, {"K_closed", x.K_closed}, {"err", x.err}});
  }
  c["mismatches"] = m;
  j["closed_form"] = c;
  return j.dump(2);
}

// ---------------------------------------------------------------- witness

namespace {

/// Real roots of t ↦ F(x + t y) on [−4, 4] by sign changes and bisection.
std::vector<double> line_roots(const NumericForm& f, const Vector& x, const Vector& y) {
  constexpr int kCells = 64;
  constexpr double kSpan = 4.0;
  std::vector<double> roots;
  auto at = [&](double t) { return f.value(x + t * y); };
  double t0 = -kSpan, v0 = at(t0);
  for (int i = 1; i <= kCells; ++i) {
    const double t1 = -kSpan + 2 * kSpan * i / kCells;
    const double v1 = at(t1);
    if ((v0 < 0) != (v1 < 0)) {
      double a = t0, b = t1, va = v0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (a + b);
        const double vm = at(mid);
        if ((vm < 0) == (va < 0)) {
          a = mid;
          va = vm;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    t0 = t1;
    v0 = v1;
  }
  return roots;
}

}  // namespace

WitnessResult witness(const Form& f, long budget, std::uint64_t seed) {
  if (!is_ternary_cubic(f)) throw Error(ErrorCode::unsupported_form, "witness search needs a ternary cubic");
  WitnessResult out;
  CubicInvariants inv{Rational(0), hessian_det_poly(f)};
  if (inv.hessian.is_zero()) {
    out.diagnostic = "index cone empty: the Hessian vanishes identically";
    return out;
  }
  inv.S = aronhold_S(f);
  const NumericForm nf(f);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (long j = 0; j < budget; ++j) {
    out.attempts = j + 1;
    std::mt19937_64 rng = substream(seed, static_cast<std::uint64_t>(j));
    Vector z = gaussian(rng, 3);
    // Three of four attempts start on the curve F = 0, then step off it.
    if (j % 4 != 3) {
      const Vector y = gaussian(rng, 3);
      const std::vector<double> roots = line_roots(nf, z, y);
      if (roots.empty()) continue;
      const double t = roots[static_cast<std::size_t>(unit(rng) * roots.size()) % roots.size()];
      z += t * y;
      const double eps = std::pow(10.0, -4.0 + 3.0 * unit(rng));
      z += eps * z.norm() * gaussian(rng, 3).normalized();
    }
    if (z.norm() == 0.0) continue;
    try {
      const ConePoint p = classify(nf, z);
      if (!p.in_index_cone()) continue;
      const double r = sectional_curvature_closed(f, inv, p.x, {.require_index_cone = false});
      if (r >= -3.0 && r <= 0.0) {
        out.found = true;
        out.point = normalize_to_level(nf, p.x);
        out.R = r;
        out.diagnostic = "found";
        return out;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::near_degenerate && e.code() != ErrorCode::hessian_zero) throw;
    }
  }
  out.diagnostic = "no bound-satisfying index-cone point within budget";
  return out;
}

std::string witness_json(const Form& f, const WitnessResult& w) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["form_hash"] = form_hash_hex(f);
  j["found"] = w.found;
  j["attempts"] = w.attempts;
  j["diagnostic"] = w.diagnostic;
  if (w.found) {
    j["point"] = to_json(w.point);
    j["R"] = w.R;
  } else {
    j["point"] = nullptr;
    j["R"] = nullptr;
  }
  return j.dump(2);
}

// ---------------------------------------------------------------- region grid

RationalVector region_point(const RegionGridSpec& spec, const RegionLabel& label) {
  RationalVector p(3, Rational(1));
  int slot = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == spec.fix) continue;
    p[static_cast<std::size_t>(i)] = slot++ == 0 ? label.x : label.y;
  }
  return p;
}

std::vector<RegionLabel> region_grid(const Form& f, const RegionGridSpec& spec) {
  if (!is_ternary_cubic(f)) throw Error(ErrorCode::unsupported_form, "region grid needs a ternary cubic");
  if (spec.resolution < 2) throw Error(ErrorCode::invalid_argument, "resolution must be >= 2");
  if (spec.fix < 0 || spec.fix > 2) throw Error(ErrorCode::invalid_argument, "fix must be 0, 1 or 2");
  const CubicInvariants inv = cubic_invariants(f);
  const BoundPolynomials bp = bound_polynomials(f, inv);
  const Rational steps(spec.resolution - 1);
  const Rational dx = (spec.x_hi - spec.x_lo) / steps;
  const Rational dy = (spec.y_hi - spec.y_lo) / steps;

  std::vector<RegionLabel> out;
  out.reserve(static_cast<std::size_t>(spec.resolution) * spec.resolution);
  for (int iy = 0; iy < spec.resolution; ++iy) {
    for (int ix = 0; ix < spec.resolution; ++ix) {
      RegionLabel l;
      l.x = spec.x_lo + dx * Rational(ix);
      l.y = spec.y_lo + dy * Rational(iy);
      const RationalVector p = region_point(spec, l);
      l.sign_f = eval_exact(f, p).sign();
      l.sign_h = eval_exact(inv.hessian, p).sign();
      l.in_index_cone = classify_exact(f, p) == ConeClass::index_cone;
      l.sign_upper = eval_exact(bp.upper, p).sign();
      l.sign_lower = eval_exact(bp.lower, p).sign();
      out.push_back(std::move(l));
    }
  }
  return out;
}

std::string region_csv(const std::vector<RegionLabel>& labels) {
  std::ostringstream s;
  s << "x,y,signF,signH,in_index_cone,signPupper,signPlower\n";
  s << std::setprecision(17);
  for (const auto& l : labels) {
    s << l.x.to_double() << ',' << l.y.to_double() << ',' << l.sign_f << ',' << l.sign_h << ','
      << (l.in_index_cone ? 1 : 0) << ',' << l.sign_upper << ',' << l.sign_lower << '\n';
  }
  return s.str();
}

// ---------------------------------------------------------------- invariants

namespace {

json form_summary(const Form& f) {
  int pos = 0, neg = 0;
  for (const auto& [e, c] : f.terms()) (c.sign() > 0 ? pos : neg)++;
  json j;
  j["text"] = to_string(f);
  j["form"] = json::parse(form_to_json(f));
  j["monomials"] = f.size();
  j["positive_coefficients"] = pos;
  j["negative_coefficients"] = neg;
  j["coefficient_signs"] = f.is_zero() ? "zero" : neg == 0 ? "all_positive" : pos == 0 ? "all_negative" : "mixed";
  return j;
}

}  // namespace

std::string report_invariants(const Form& f) {
  if (!is_ternary_cubic(f)) throw Error(ErrorCode::unsupported_form, "invariants need a ternary cubic");
  const CubicInvariants inv = cubic_invariants(f);
  const BoundPolynomials bp = bound_polynomials(f, inv);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["form_hash"] = form_hash_hex(f);
  j["form"] = to_string(f);
  j["S"] = inv.S.str();
  j["S_float"] = inv.S.to_double();
  j["hessian"] = form_summary(inv.hessian);
  j["P_upper"] = form_summary(bp.upper);
  j["P_lower"] = form_summary(bp.lower);
  j["index_cone_empty"] = inv.hessian.is_zero();

  json sample = nullptr;
  if (!inv.hessian.is_zero()) {
    const WitnessResult w = witness(f, 2000, 1);
    if (w.found) sample = {{"point", to_json(w.point)}, {"R", w.R}};
  }
  j["sample_curvature"] = sample;
  return j.dump(2);
}

}  // namespace kcurv
