// Runs the fourteen acceptance checks and prints one PASS/FAIL line each.
// Exits nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <kcurv/analysis.hpp>
#include <kcurv/aronhold.hpp>
#include <kcurv/cicy.hpp>
#include <kcurv/cone.hpp>
#include <kcurv/curvature.hpp>
#include <kcurv/fixtures.hpp>
#include <kcurv/form_io.hpp>
#include <kcurv/geodesic.hpp>

#include "test_util.hpp"

using namespace kcurv;

namespace {

// Tolerances, fixed once here.
constexpr double kCalibrationTol = 1e-5;
constexpr double kDiagonalTol = 1e-5;
constexpr double kQuadraticPowerTol = 1e-4;
constexpr double kTriangleFloor = 1e-4;
constexpr double kCicyLowerSlack = 1e-4;
constexpr double kCicyUpper = -1e-6;
constexpr double kFlatTol = 1e-6;
constexpr double kConstantTol = 1e-5;
constexpr double kTorusSlack = 1e-3;
constexpr double kTorusFlatTol = 1e-6;
constexpr double kTorusAttain = -2.5;
constexpr double kHyperboloidTol = 1e-6;
constexpr double kPullbackTol = 1e-5;
constexpr double kExpCurveTol = 1e-5;
constexpr double kDriftTol = 1e-8;
constexpr double kHalvingRatio = 8.0;
constexpr double kSurfaceTol = 1e-3;
constexpr long kWitnessBudget = 10000;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && pass_) first_ = what;
    pass_ = pass_ && ok;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  Outcome done() const { return {pass_, pass_ ? notes_ : first_ + (notes_.empty() ? "" : " | " + notes_)}; }

 private:
  bool pass_ = true;
  std::string first_, notes_;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string to_csv(const Vector& v) {
  std::string out;
  char buf[32];
  for (int i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", v[i]);
    out += (i ? "," : "") + std::string(buf);
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RationalMatrix random_invertible(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long> c(-3, 3);
  for (;;) {
    RationalMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rational(c(rng) + (i == j ? 4 : 0));
    if (!m.det().is_zero()) return m;
  }
}

Vector index_point(const NumericForm& f, std::mt19937_64& rng, bool orthant) {
  for (;;) {
    Vector x = testutil::random_vector(rng, f.dim());
    if (orthant) x = x.cwiseAbs();
    try {
      const ConePoint p = classify(f, x);
      if (p.in_index_cone()) return normalize_to_level(f, p.x);
    } catch (const Error&) {
    }
  }
}

// The engine refuses points too close to the cone boundary (ill_conditioned);
// those are redrawn, counted, and may not exceed this share of the target.
constexpr double kMaxRefusedShare = 0.1;

bool refused(const Error& e) { return e.code() == ErrorCode::ill_conditioned; }

// Constant-curvature check over random points and planes.
void constant_curvature(Check& c, const Form& form, double expected, double tol, int points, std::mt19937_64& rng,
                        bool orthant, double& worst, int& refusals) {
  const NumericForm f(form);
  int local_refusals = 0;
  for (int k = 0; k < points;) {
    const Vector x = index_point(f, rng, orthant);
    const int r = f.dim();
    CurvatureSample s;
    try {
      s = sectional_curvature_numeric(f, x, testutil::random_vector(rng, r), testutil::random_vector(rng, r));
    } catch (const Error& e) {
      if (!refused(e)) throw;
      ++local_refusals;
      continue;
    }
    ++k;
    worst = std::max(worst, std::abs(s.K - expected));
    c.require(std::abs(s.K - expected) <= tol, fmt("K = %.9f, expected %.6f", s.K, expected));
  }
  c.require(local_refusals <= kMaxRefusedShare * points, std::to_string(local_refusals) + " refused points");
  refusals += local_refusals;
}

Outcome calibration() {
  Check c;
  std::mt19937_64 rng(101);
  double worst = 0;
  int refusals = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int r : {3, 4, 5, 6})
    for (int k = 0; k < 5; ++k)
      constant_curvature(c, change_of_variables(fixtures::lorentzian(r), random_invertible(rng, r)), -1.0,
                         kCalibrationTol, 50, rng, false, worst, refusals);
  const double dt = seconds_since(t0);
  c.require(dt < 30.0, fmt("runtime %.1f s", dt));
  c.note(fmt("max |K+1| = %.2e, %.1f s", worst, dt) + ", refused " + std::to_string(refusals));
  return c.done();
}

Outcome diagonal_forms() {
  Check c;
  std::mt19937_64 rng(102);
  const auto t0 = std::chrono::steady_clock::now();
  for (auto [n, r] : std::vector<std::pair<int, int>>{{3, 3}, {3, 4}, {4, 3}, {5, 3}}) {
    double worst = 0;
    int refusals = 0;
    constant_curvature(c, fixtures::diagonal(n, r), -0.25 * n * n, kDiagonalTol, 50, rng, true, worst, refusals);
    c.note(fmt("(%g,", n) + fmt("%g) max dev %.1e", r, worst) + " refused " + std::to_string(refusals));
  }
  const double dt = seconds_since(t0);
  c.require(dt < 60.0, fmt("runtime %.1f s", dt));
  c.note(fmt("%.1f s", dt));
  return c.done();
}

Outcome quadratic_powers() {
  Check c;
  std::mt19937_64 rng(103);
  const Form q = change_of_variables(fixtures::lorentzian(4), random_invertible(rng, 4));
  for (int d : {4, 6}) {
    double worst = 0;
    int refusals = 0;
    constant_curvature(c, q.pow(d / 2), -(d - 1.0), kQuadraticPowerTol, 30, rng, false, worst, refusals);
    c.note(fmt("d=%g max dev %.1e", d, worst) + " refused " + std::to_string(refusals));
  }
  return c.done();
}

Outcome formula_triangle() {
  Check c;
  std::mt19937_64 rng(104);
  int forms = 0, retries = 0;
  double worst = 0;
  while (forms < 20) {
    const Form f = testutil::random_form(rng, 3, 3);
    if (!testutil::rational_index_point(f, rng, 400)) continue;
    ++forms;
    const CubicInvariants inv = cubic_invariants(f);
    int done = 0;
    while (done < 5) {
      const auto x = testutil::rational_index_point(f, rng);
      if (!x) break;
      const Rational exact = sectional_curvature_closed_exact(f, inv, *x);
      c.require(curvature_reduced(reduce_at_point(f, *x)) == exact, "reduced-coordinate value differs");
      CurvatureSample s;
      try {
        s = sectional_curvature_numeric(f, to_double(*x), testutil::random_vector(rng, 3), testutil::random_vector(rng, 3));
      } catch (const Error& e) {
        // Rational points can sit very close to the cone boundary.
        if (e.code() != ErrorCode::ill_conditioned) throw;
        ++retries;
        continue;
      }
      const double diff = std::abs(s.K - exact.to_double());
      worst = std::max(worst, diff);
      c.require(diff <= std::max(kTriangleFloor, 10 * s.err_estimate), fmt("FD %.8f vs exact %.8f", s.K, exact.to_double()));
      ++done;
    }
    c.require(done == 5, "ran out of rational index points");
  }
  c.note(fmt("max |FD - exact| = %.2e, ill-conditioned redraws %g", worst, retries));
  return c.done();
}

Outcome exact_invariants() {
  Check c;
  const Rational a = aronhold_S(fixtures::nodal_cubic()), b = aronhold_S(fixtures::elliptic_cubic());
  const Rational d = aronhold_S(fixtures::diagonal(3, 3)), e = aronhold_S(fixtures::three_lines());
  c.require(a == Rational(1, 81), "nodal S = " + a.str());
  c.require(b == Rational(1, 27), "elliptic S = " + b.str());
  c.require(d == Rational(0), "diagonal S = " + d.str());
  c.require(e == Rational(1), "6xyz S = " + e.str());
  c.note("S = " + a.str() + ", " + b.str() + ", " + d.str() + ", " + e.str());
  return c.done();
}

Outcome nodal_bound() {
  Check c;
  const Form z = Form::variable(3, 0), x = Form::variable(3, 1), y = Form::variable(3, 2);
  const Form inner = x.pow(5) + Rational(2) * z * (x * x - y * y) * (Rational(3) * y * y + x * x) -
                     Rational(9) * x * y.pow(4);
  const Form expected = Rational(576) * x * inner;
  const Form got = bound_polynomials(fixtures::nodal_cubic()).upper;
  c.require(got == expected, "P_upper = " + to_string(got));
  c.note(std::to_string(got.size()) + " monomials");
  return c.done();
}

Outcome cicy_two() {
  Check c;
  const Form f = intersection_form({{2, 2, 1}, {{1, 2, 0}, {2, 1, 2}}});
  Form e(3, 3);
  e.add_term({2, 1, 0}, 12);
  e.add_term({1, 2, 0}, 6);
  e.add_term({2, 0, 1}, 6);
  e.add_term({0, 2, 1}, 6);
  e.add_term({1, 1, 1}, 30);
  c.require(f == e, "form = " + to_string(f));
  c.note(to_string(f));
  return c.done();
}

Outcome cicy_one() {
  Check c;
  const Form f = intersection_form({{3, 2, 2}, {{1, 1, 0}, {1, 1, 0}, {2, 1, 1}, {0, 0, 2}}});
  const Rational s = aronhold_S(f);
  c.require(s == Rational(4624), "S = " + s.str());
  const Form up = bound_polynomials(f).upper;
  bool neg = true;
  for (const auto& [ex, co] : up.terms()) neg = neg && co.sign() < 0;
  c.require(up.size() == 13 && up.degree() == 6, "P_upper has " + std::to_string(up.size()) + " monomials");
  c.require(neg, "P_upper has a nonnegative coefficient");
  ScanOptions o;
  o.samples = 500;
  const ScanReport rep = scan(f, o);
  c.require(rep.evaluated > 0, "no samples evaluated");
  c.require(rep.k_min >= -2.25 - kCicyLowerSlack, fmt("K_min = %.8f", rep.k_min));
  c.require(rep.k_max <= kCicyUpper, fmt("K_max = %.3e", rep.k_max));
  c.require(rep.violations.empty(), "bound violations reported");
  c.require(rep.closed_form_mismatches.empty(), "closed-form mismatch");
  c.note(fmt("K in [%.6f, %.6f]", rep.k_min, rep.k_max) + ", evaluated " + std::to_string(rep.evaluated) +
         ", skipped " + std::to_string(rep.skipped));
  return c.done();
}

Outcome constant_scans() {
  Check c;
  ScanOptions o;
  o.samples = 200;
  const ScanReport flat = scan(fixtures::three_lines(), o);
  c.require(std::abs(flat.k_min) <= kFlatTol && std::abs(flat.k_max) <= kFlatTol,
            fmt("6xyz K in [%.3e, %.3e]", flat.k_min, flat.k_max));
  c.require(flat.evaluated > 0, "6xyz: nothing evaluated");

  std::vector<Form> s_zero = {fixtures::diagonal(3, 3)};
  std::mt19937_64 rng(109);
  s_zero.push_back(change_of_variables(fixtures::diagonal(3, 3), random_invertible(rng, 3)));
  for (std::size_t i = 0; i < s_zero.size(); ++i) {
    c.require(aronhold_S(s_zero[i]).is_zero(), "fixture has S != 0");
    ScanOptions oi = o;
    if (i > 0) oi.region = parse_region("ball");
    const ScanReport r = scan(s_zero[i], oi);
    c.require(r.evaluated > 0, "S = 0 fixture: nothing evaluated");
    c.require(std::abs(r.k_min + 2.25) <= kConstantTol && std::abs(r.k_max + 2.25) <= kConstantTol,
              fmt("S = 0 fixture K in [%.8f, %.8f]", r.k_min, r.k_max));
    c.note(fmt("S=0 K in [%.7f, %.7f]", r.k_min, r.k_max));
  }
  c.note(fmt("6xyz K in [%.1e, %.1e]", flat.k_min, flat.k_max));
  return c.done();
}

// 3×3 hermitian matrices in the fixture's coordinate order.
using CMat = Eigen::Matrix3cd;

CMat to_matrix(const Vector& c) {
  CMat m = CMat::Zero();
  for (int i = 0; i < 3; ++i) m(i, i) = c[i];
  int k = 3;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j, k += 2) {
      m(i, j) = {c[k], c[k + 1]};
      m(j, i) = {c[k], -c[k + 1]};
    }
  return m;
}

Vector to_coords(const CMat& m) {
  Vector c(9);
  for (int i = 0; i < 3; ++i) c[i] = m(i, i).real();
  int k = 3;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j, k += 2) {
      c[k] = m(i, j).real();
      c[k + 1] = m(i, j).imag();
    }
  return c;
}

Outcome torus() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const NumericForm f(fixtures::hermitian_determinant(3));
  std::mt19937_64 rng(110);
  const CMat id = CMat::Identity();
  double kmin = 1e9, kmax = -1e9;
  int refusals = 0;
  for (int k = 0; k < 200;) {
    const CMat g = id + 0.5 * to_matrix(testutil::random_vector(rng, 9));
    const CMat p = g * g.adjoint();
    CMat a, b;
    if (k % 2 == 0) {
      a = to_matrix(testutil::random_vector(rng, 9));
      b = to_matrix(testutil::random_vector(rng, 9));
    } else {
      // Perturbations of the plane spanned by diag(1,−1,0) and a root vector.
      a = CMat::Zero();
      a(0, 0) = 1;
      a(1, 1) = -1;
      b = CMat::Zero();
      b(0, 1) = b(1, 0) = 1;
      a += 0.05 * to_matrix(testutil::random_vector(rng, 9));
      b += 0.05 * to_matrix(testutil::random_vector(rng, 9));
    }
    a -= (a.trace() / 3.0) * id;
    b -= (b.trace() / 3.0) * id;
    CurvatureSample s;
    try {
      s = sectional_curvature_numeric(f, to_coords(p), to_coords(g * a * g.adjoint()), to_coords(g * b * g.adjoint()));
    } catch (const Error& e) {
      if (!refused(e)) throw;
      ++refusals;
      continue;
    }
    ++k;
    kmin = std::min(kmin, s.K);
    kmax = std::max(kmax, s.K);
  }
  c.require(kmin >= -3 - kTorusSlack && kmax <= kTorusSlack, fmt("K in [%.6f, %.6f]", kmin, kmax));
  c.require(kmin <= kTorusAttain, fmt("sampled minimum %.6f", kmin));
  CMat d1 = CMat::Zero(), d2 = CMat::Zero();
  d1(0, 0) = 1;
  d1(1, 1) = -1;
  d2(0, 0) = d2(1, 1) = 1;
  d2(2, 2) = -2;
  const double flat = sectional_curvature_numeric(f, to_coords(id), to_coords(d1), to_coords(d2)).K;
  c.require(std::abs(flat) <= kTorusFlatTol, fmt("commuting plane K = %.3e", flat));
  const double dt = seconds_since(t0);
  c.require(dt < 300.0, fmt("runtime %.1f s", dt));
  c.require(refusals <= kMaxRefusedShare * 200, std::to_string(refusals) + " refused points");
  c.note(fmt("K in [%.6f, %.6f]", kmin, kmax) + fmt(", flat %.1e, %.1f s", flat, dt) + ", refused " +
         std::to_string(refusals));
  return c.done();
}

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Vector unit_tangent(const NumericForm& f, const Vector& x, std::mt19937_64& rng) {
  const Vector v = project_to_tangent(f.gradient(x), x, testutil::random_vector(rng, f.dim()));
  return v / std::sqrt(metric(f, x, v, v));
}

Outcome geodesics() {
  Check c;
  std::mt19937_64 rng(111);

  const Trajectory hyp = geodesic_integrate(fixtures::lorentzian(3), vec({1, 0, 0}), vec({0, 1, 0}), 1.0, 1000);
  const double dh = (hyp.points.back() - vec({std::cosh(1.0), std::sinh(1.0), 0})).norm();
  c.require(dh <= kHyperboloidTol, fmt("hyperboloid endpoint off by %.2e", dh));

  // x0³ − x1³ − x2³ pulled back from the hyperboloid by y = x^{3/2}.
  const NumericForm dc(fixtures::diagonal(3, 3));
  const Vector x = normalize_to_level(dc, vec({1.5, 1, 1}));
  const Vector v0 = 0.3 * unit_tangent(dc, x, rng);
  const Trajectory tr = geodesic_integrate(dc, x, v0, 1.0, 1000);
  const Vector y0 = x.array().pow(1.5);
  const Vector dy = 1.5 * x.array().sqrt() * v0.array();
  const double theta = std::sqrt(dy[1] * dy[1] + dy[2] * dy[2] - dy[0] * dy[0]);
  double dp = 0, drift = 0;
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    const double t = tr.times[k];
    const Vector y = std::cosh(theta * t) * y0 + std::sinh(theta * t) / theta * dy;
    dp = std::max(dp, (tr.points[k] - Vector(y.array().pow(2.0 / 3.0))).norm());
    drift = std::max({drift, std::abs(tr.speeds[k] - tr.speeds[0]), std::abs(dc.value(tr.points[k]) - 1.0),
                      std::abs(tr.level_drift[k])});
  }
  c.require(dp <= kPullbackTol, fmt("diagonal pullback off by %.2e", dp));
  c.require(drift <= kDriftTol, fmt("speed/level drift %.2e", drift));

  // 2×2 hermitian determinant: the orbit of exp(sA).
  Form h(2, 4);
  h.add_term({1, 1, 0, 0}, 1);
  h.add_term({0, 0, 2, 0}, -1);
  h.add_term({0, 0, 0, 2}, -1);
  const Vector id = vec({1, 1, 0, 0}), a = vec({0.6, -0.6, 0.3, -0.5});
  const double lambda = std::sqrt(0.7);
  const auto curve = [&](double s) { return Vector(std::cosh(s * lambda) * id + std::sinh(s * lambda) / lambda * a); };
  const Trajectory ht = geodesic_integrate(h, id, a, 1.0, 1000);
  double dset = 0;
  for (const Vector& p : ht.points) {
    double lo = -3, hi = 3;
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) * 0.381966, m2 = hi - (hi - lo) * 0.381966;
      if ((curve(m1) - p).norm() < (curve(m2) - p).norm()) hi = m2; else lo = m1;
    }
    dset = std::max(dset, (curve(0.5 * (lo + hi)) - p).norm());
  }
  c.require(dset <= kExpCurveTol, fmt("set distance to exp curve %.2e", dset));

  const Vector e10 = exp_map(dc, x, v0, 10), e20 = exp_map(dc, x, v0, 20), e40 = exp_map(dc, x, v0, 40);
  const double ratio = (e10 - e20).norm() / (e20 - e40).norm();
  c.require(ratio >= kHalvingRatio, fmt("step-halving ratio %.2f", ratio));
  c.note(fmt("hyperboloid %.1e, pullback %.1e", dh, dp) + fmt(", exp curve %.1e, drift %.1e", dset, drift) +
         fmt(", halving ratio %.1f", ratio));
  return c.done();
}

Outcome surface() {
  Check c;
  std::mt19937_64 rng(112);
  double worst = 0;
  for (const Form& form : {fixtures::lorentzian(3), fixtures::diagonal(3, 3)}) {
    const NumericForm f(form);
    for (int k = 0; k < 5; ++k) {
      const Vector x = index_point(f, rng, true);
      const Vector l1 = testutil::random_vector(rng, 3), l2 = testutil::random_vector(rng, 3);
      const double ks = sectional_curvature_surface(f, x, l1, l2).K;
      const double kf = sectional_curvature_numeric(f, x, l1, l2).K;
      worst = std::max(worst, std::abs(ks - kf));
      c.require(std::abs(ks - kf) <= kSurfaceTol, fmt("surface %.6f vs FD %.6f", ks, kf) + " at x = " + to_csv(x) +
                                                      ", L1 = " + to_csv(l1) + ", L2 = " + to_csv(l2));
    }
  }
  c.note(fmt("max |surface - FD| = %.2e", worst));
  return c.done();
}

Outcome witnesses() {
  Check c;
  for (const auto& [name, form] : std::vector<std::pair<std::string, Form>>{{"nodal", fixtures::nodal_cubic()},
                                                                            {"elliptic", fixtures::elliptic_cubic()}}) {
    const WitnessResult w = witness(form, kWitnessBudget, 7);
    c.require(w.found, name + ": " + w.diagnostic);
    if (!w.found) continue;
    const ConePoint p = classify(NumericForm(form), w.point);
    const double r = sectional_curvature_closed(form, w.point);
    c.require(p.in_index_cone() && r >= -3 && r <= 0, name + ": witness does not satisfy the bounds");
    c.note(name + fmt(" R = %.4f after %g attempts", r, static_cast<double>(w.attempts)));
  }
  const WitnessResult z = witness(fixtures::concurrent_lines(), kWitnessBudget, 7);
  c.require(!z.found && z.diagnostic.find("index cone empty") != std::string::npos, "concurrent lines: " + z.diagnostic);
  return c.done();
}

int components(const std::vector<char>& mask, int n) {
  std::vector<char> seen(mask.size(), 0);
  int count = 0;
  for (int s = 0; s < n * n; ++s) {
    if (!mask[static_cast<std::size_t>(s)] || seen[static_cast<std::size_t>(s)]) continue;
    ++count;
    std::queue<int> q;
    q.push(s);
    seen[static_cast<std::size_t>(s)] = 1;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      const int ix = v % n, iy = v / n;
      const int nb[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
      for (const auto& p : nb) {
        if (p[0] < 0 || p[0] >= n || p[1] < 0 || p[1] >= n) continue;
        const int w = p[1] * n + p[0];
        if (mask[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          q.push(w);
        }
      }
    }
  }
  return count;
}

Outcome region() {
  Check c;
  const Form f = fixtures::nodal_cubic();
  RegionGridSpec spec;
  spec.resolution = 200;
  const auto labels = region_grid(f, spec);
  const int n = spec.resolution;
  std::vector<char> a1(labels.size()), a2(labels.size());
  long checked = 0;
  bool agree = true;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const RegionLabel& l = labels[i];
    a1[i] = l.in_index_cone && l.sign_f > 0 && l.x.sign() < 0;
    a2[i] = l.in_index_cone && l.sign_f < 0 && l.x.sign() > 0;
    if (!l.in_index_cone) continue;
    RationalVector p = region_point(spec, l);
    if (l.sign_f < 0)
      for (auto& v : p) v = -v;
    // Independent value through the reduced coordinates at p.
    const Rational r = curvature_reduced(reduce_at_point(f, p));
    agree = agree && ((l.sign_upper <= 0) == (r.sign() <= 0));
    ++checked;
  }
  const int c1 = components(a1, n), c2 = components(a2, n);
  c.require(c1 == 1, "x<0, F>0 region has " + std::to_string(c1) + " components");
  c.require(c2 == 2, "x>0, F<0 region has " + std::to_string(c2) + " components");
  c.require(agree, "sign of P_upper disagrees with R");
  c.require(checked > 0, "no in-cone grid points");
  c.note("components " + std::to_string(c1) + " and " + std::to_string(c2) + ", " + std::to_string(checked) +
         " in-cone points checked");
  return c.done();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"calibration: Lorentzian forms have K = -1", calibration},
      {"diagonal forms: K = -(n/2)^2", diagonal_forms},
      {"powers of a quadratic: K = -(d-1)", quadratic_powers},
      {"reduced, closed and FD curvature agree on random cubics", formula_triangle},
      {"Aronhold S regressions", exact_invariants},
      {"nodal upper bound polynomial", nodal_bound},
      {"CICY (2,2,1) intersection form", cicy_two},
      {"CICY (3,2,2): S, bound polynomial and orthant scan", cicy_one},
      {"constant-curvature scans (6xyz and S = 0)", constant_scans},
      {"hermitian determinant fixture", torus},
      {"geodesic oracles", geodesics},
      {"surface expansion vs FD", surface},
      {"witness search", witnesses},
      {"nodal region grid", region},
  };
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = checks[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2zu %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, checks[i].first.c_str(),
                seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
