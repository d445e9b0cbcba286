#include "kcurv/curvature.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "kcurv/error.hpp"
#include "kcurv/geodesic.hpp"

namespace kcurv {

std::string_view to_string(CurvatureMethod m) noexcept {
  switch (m) {
    case CurvatureMethod::finite_difference:
      return "finite_difference";
    case CurvatureMethod::closed_form_cubic:
      return "closed_form_cubic";
    case CurvatureMethod::surface_expansion:
      return "surface_expansion";
  }
  return "finite_difference";
}

namespace {

NumericForm restrict_to_chart(const NumericForm& f, const Vector& origin, const Matrix& directions) {
  if (origin.size() != f.dim() || directions.rows() != f.dim()) {
    throw Error(ErrorCode::dimension_mismatch, "radial chart");
  }
  if (f.degree() < 2) throw Error(ErrorCode::unsupported_form, "radial chart needs degree >= 2");
  Matrix basis(f.dim(), directions.cols() + 1);
  basis.col(0) = origin;
  basis.rightCols(directions.cols()) = directions;
  return f.substitute(basis);
}

Matrix frame_matrix(const TangentFrame& frame) {
  Matrix m(frame.base.x.size(), static_cast<Eigen::Index>(frame.vectors.size()));
  for (std::size_t i = 0; i < frame.vectors.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = frame.vectors[i];
  return m;
}

}  // namespace

RadialChart::RadialChart(NumericForm f, Vector origin, Matrix directions)
    : local_(restrict_to_chart(f, origin, directions)),
      degree_(f.degree()),
      origin_(std::move(origin)),
      directions_(std::move(directions)) {}

RadialChart::RadialChart(NumericForm f, const TangentFrame& frame)
    : RadialChart(std::move(f), frame.base.x, frame_matrix(frame)) {}

Vector RadialChart::local_point(const Vector& u) const {
  if (u.size() != dim()) throw Error(ErrorCode::dimension_mismatch, "chart coordinates");
  Vector w(dim() + 1);
  w[0] = 1.0;
  w.tail(dim()) = u;
  return w;
}

Vector RadialChart::point(const Vector& u) const {
  const Vector w = local_point(u);
  const double s = local_.value(w);
  if (!(s > 0.0)) throw Error(ErrorCode::chart_exit, "F <= 0 along the chart ray");
  return (origin_ + directions_ * u) / std::pow(s, 1.0 / degree_);
}

Matrix RadialChart::metric(const Vector& u) const {
  const Jet j = local_.jet(local_point(u), 2);
  if (!(j.value > 0.0)) throw Error(ErrorCode::chart_exit, "F <= 0 along the chart ray");
  const double d = degree_;
  const double s = j.value;
  const Eigen::Index m = dim();
  const Vector si = j.grad.tail(m);
  const Matrix h = j.hess.bottomRightCorner(m, m);
  return -h / (d * (d - 1) * s) + si * si.transpose() / (d * d * s * s);
}

Matrix RadialChart::metric_with_derivatives(const Vector& u, std::vector<Matrix>& dg) const {
  const Jet j = local_.jet(local_point(u), 3);
  if (!(j.value > 0.0)) throw Error(ErrorCode::chart_exit, "F <= 0 along the chart ray");
  const double d = degree_;
  const double c = d * (d - 1);
  const double s = j.value;
  const Eigen::Index m = dim();
  const Vector si = j.grad.tail(m);
  const Matrix h = j.hess.bottomRightCorner(m, m);

  dg.assign(static_cast<std::size_t>(m), Matrix::Zero(m, m));
  for (Eigen::Index k = 0; k < m; ++k) {
    const Matrix t = j.third.empty() ? Matrix::Zero(m, m)
                                     : Matrix(j.third[static_cast<std::size_t>(k + 1)].bottomRightCorner(m, m));
    const Vector hk = h.col(k);
    dg[static_cast<std::size_t>(k)] = -t / (c * s) + h * (si[k] / (c * s * s)) +
                                      (hk * si.transpose() + si * hk.transpose()) / (d * d * s * s) -
                                      si * si.transpose() * (2.0 * si[k] / (d * d * s * s * s));
  }
  return -h / (c * s) + si * si.transpose() / (d * d * s * s);
}

Matrix RadialChart::pushforward(const Vector& u) const {
  const Jet j = local_.jet(local_point(u), 1);
  if (!(j.value > 0.0)) throw Error(ErrorCode::chart_exit, "F <= 0 along the chart ray");
  const double d = degree_;
  const double s = j.value;
  const Vector si = j.grad.tail(dim());
  const Vector big_x = origin_ + directions_ * u;
  const Matrix radial = big_x * si.transpose() / (d * s);
  return (directions_ - radial) * std::pow(s, -1.0 / d);
}

Matrix chart_metric(const NumericForm& f, const Vector& x, const TangentFrame& frame, const Vector& u) {
  TangentFrame local = frame;
  local.base.x = x;
  return RadialChart(f, local).metric(u);
}

namespace {

/// First and selected second u-derivatives of the chart metric at u = 0.
struct MetricJet {
  Matrix g0;
  std::vector<Matrix> d1;
  /// d2[a * m + b] = ∂_a∂_b g, filled for requested pairs (both orders).
  std::vector<Matrix> d2;
  Eigen::Index m = 0;

  const Matrix& second(Eigen::Index a, Eigen::Index b) const {
    return d2[static_cast<std::size_t>(a * m + b)];
  }
};

using PairList = std::vector<std::pair<Eigen::Index, Eigen::Index>>;

/// g and ∂g come from the chart in closed form; ∂_a∂_b g is a central
/// difference of ∂_b g along u_a, averaged with the one along u_b.
MetricJet central_jet(const RadialChart& chart, double h, const PairList& pairs) {
  const Eigen::Index m = chart.dim();
  MetricJet out;
  out.m = m;
  out.g0 = chart.metric_with_derivatives(Vector::Zero(m), out.d1);
  out.d2.resize(static_cast<std::size_t>(m * m));

  std::vector<std::vector<Matrix>> plus(static_cast<std::size_t>(m)), minus(static_cast<std::size_t>(m));
  auto shifted = [&](Eigen::Index a) {
    const auto aa = static_cast<std::size_t>(a);
    if (plus[aa].empty()) {
      chart.metric_with_derivatives(h * Vector::Unit(m, a), plus[aa]);
      chart.metric_with_derivatives(-h * Vector::Unit(m, a), minus[aa]);
    }
  };
  for (const auto& [a, b] : pairs) {
    shifted(a);
    shifted(b);
    const auto aa = static_cast<std::size_t>(a), bb = static_cast<std::size_t>(b);
    const Matrix along_a = (plus[aa][bb] - minus[aa][bb]) / (2.0 * h);
    const Matrix along_b = (plus[bb][aa] - minus[bb][aa]) / (2.0 * h);
    const Matrix v = 0.5 * (along_a + along_b);
    out.d2[static_cast<std::size_t>(a * m + b)] = v;
    out.d2[static_cast<std::size_t>(b * m + a)] = v;
  }
  return out;
}

/// Fourth-order derivatives from central differences at h and h/2.
MetricJet combine(const MetricJet& coarse, const MetricJet& fine) {
  MetricJet out = fine;
  for (std::size_t k = 0; k < out.d2.size(); ++k) {
    if (fine.d2[k].size() != 0) out.d2[k] = (4.0 * fine.d2[k] - coarse.d2[k]) / 3.0;
  }
  return out;
}

/// Lowered Christoffel symbol Γ_{n,kl} = ½(∂_k g_ln + ∂_l g_kn − ∂_n g_kl).
double christoffel_lower(const MetricJet& j, Eigen::Index n, Eigen::Index k, Eigen::Index l) {
  return 0.5 * (j.d1[static_cast<std::size_t>(k)](l, n) + j.d1[static_cast<std::size_t>(l)](k, n) -
                j.d1[static_cast<std::size_t>(n)](k, l));
}

/// R_{iklm} from a metric jet; R_{abab} is the sectional numerator.
double riemann(const MetricJet& j, const Matrix& ginv, Eigen::Index i, Eigen::Index k, Eigen::Index l,
               Eigen::Index m) {
  double r = 0.5 * (j.second(k, l)(i, m) + j.second(i, m)(k, l) - j.second(k, m)(i, l) - j.second(i, l)(k, m));
  for (Eigen::Index n = 0; n < j.m; ++n) {
    const double gkl = christoffel_lower(j, n, k, l);
    const double gkm = christoffel_lower(j, n, k, m);
    for (Eigen::Index p = 0; p < j.m; ++p) {
      r += ginv(n, p) * (gkl * christoffel_lower(j, p, i, m) - gkm * christoffel_lower(j, p, i, l));
    }
  }
  return r;
}

double sectional_from_jet(const MetricJet& j) {
  const Matrix ginv = j.g0.inverse();
  const double gram = j.g0(0, 0) * j.g0(1, 1) - j.g0(0, 1) * j.g0(1, 0);
  return riemann(j, ginv, 0, 1, 0, 1) / gram;
}

/// Jets at h, h/2, h/4 combined into fourth-order jets at h and h/2.
std::pair<MetricJet, MetricJet> richardson_jets(const RadialChart& chart, double h, const PairList& pairs) {
  const MetricJet j1 = central_jet(chart, h, pairs);
  const MetricJet j2 = central_jet(chart, h / 2, pairs);
  const MetricJet j4 = central_jet(chart, h / 4, pairs);
  return {combine(j1, j2), combine(j2, j4)};
}

/// Runs `eval(h)` -> {value, err} at cfg.step and, while the estimate is not
/// yet acceptable, at successively quartered steps; returns the best result.
template <typename Result, typename Eval>
Result refine_step(const FDConfig& cfg, Eval&& eval) {
  std::optional<Result> best;
  double h = cfg.step;
  for (int k = 0; k <= cfg.refinements; ++k, h /= 4) {
    try {
      Result r = eval(h);
      const bool better = !best || r.err < best->err;
      if (better) best = std::move(r);
      if (best->err <= cfg.accept_err * std::max(1.0, best->scale)) break;
      if (!better && k > 0) break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::chart_exit) throw;
    }
  }
  if (!best) throw Error(ErrorCode::chart_exit, "chart leaves the cone at every step size");
  return std::move(*best);
}

ConePoint index_point_on_level(const NumericForm& f, const Vector& x) {
  const Vector y = normalize_to_level(f, x);
  const ConePoint p = classify(f, y);
  if (!p.in_index_cone()) throw Error(ErrorCode::not_in_index_cone, "point is not in the index cone");
  return p;
}

void check_conditioning(const ConePoint& p, const std::vector<Vector>& basis, const FDConfig& cfg) {
  const auto m = static_cast<Eigen::Index>(basis.size());
  Matrix b(p.x.size(), m);
  for (Eigen::Index i = 0; i < m; ++i) b.col(i) = basis[static_cast<std::size_t>(i)];
  const Matrix gram = -(b.transpose() * p.q * b);
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) throw Error(ErrorCode::not_in_index_cone, "tangent metric is not positive definite");
  if (lo < cfg.min_gram_ratio * hi) {
    throw Error(ErrorCode::ill_conditioned, "tangent Gram matrix is ill-conditioned near the cone boundary");
  }
}

}  // namespace

TangentFrame plane_adapted_frame(const NumericForm& f, const Vector& x, const Vector& l1, const Vector& l2,
                                 const FDConfig& cfg) {
  if (l1.size() != f.dim() || l2.size() != f.dim()) throw Error(ErrorCode::dimension_mismatch, "plane vectors");
  if (f.dim() < 3) throw Error(ErrorCode::unsupported_form, "sectional curvature needs r >= 3");
  TangentFrame frame;
  frame.base = index_point_on_level(f, x);
  const ConePoint& p = frame.base;
  const std::vector<Vector> basis = tangent_basis(f, p.x);
  check_conditioning(p, basis, cfg);

  const Matrix g = -p.q;
  const Vector p1 = project_to_tangent(p.grad, p.x, l1);
  const Vector p2 = project_to_tangent(p.grad, p.x, l2);
  const double g11 = p1.dot(g * p1);
  const double g22 = p2.dot(g * p2);
  const double g12 = p1.dot(g * p2);
  if (!(g11 > 0.0) || !(g22 > 0.0) || (g11 * g22 - g12 * g12) / (g11 * g22) < 1e-12) {
    throw Error(ErrorCode::degenerate_plane, "projected plane vectors are dependent");
  }

  std::vector<Vector> candidates{p1, p2};
  candidates.insert(candidates.end(), basis.begin(), basis.end());
  frame.vectors = metric_gram_schmidt(g, candidates, 1e-12, basis.size());
  if (frame.vectors.size() != basis.size()) {
    throw Error(ErrorCode::degenerate_metric, "could not complete the tangent frame");
  }
  return frame;
}

CurvatureSample sectional_curvature_numeric(const NumericForm& f, const Vector& x, const Vector& l1,
                                            const Vector& l2, const FDConfig& cfg) {
  const TangentFrame frame = plane_adapted_frame(f, x, l1, l2, cfg);
  const RadialChart chart(f, frame);
  const PairList pairs{{0, 0}, {1, 1}, {0, 1}};
  struct Value {
    double K, err, scale;
  };
  const Value v = refine_step<Value>(cfg, [&](double h) {
    const auto [jh, jh2] = richardson_jets(chart, h, pairs);
    const double kh = sectional_from_jet(jh);
    const double kh2 = sectional_from_jet(jh2);
    const double k = kh2 + (kh2 - kh) / 15.0;
    const double err = std::abs(kh - kh2) / 15.0;
    return Value{k, std::isfinite(err) ? err : std::numeric_limits<double>::infinity(), std::abs(k)};
  });

  CurvatureSample out;
  out.point = frame.base.x;
  out.plane = {project_to_tangent(frame.base.grad, frame.base.x, l1),
               project_to_tangent(frame.base.grad, frame.base.x, l2)};
  out.K = v.K;
  out.err_estimate = v.err;
  out.method = CurvatureMethod::finite_difference;
  if (!std::isfinite(out.K) || out.err_estimate > cfg.max_err) {
    throw Error(ErrorCode::ill_conditioned, "finite-difference error estimate above max_err");
  }
  return out;
}

CurvatureTensor::CurvatureTensor(int dim)
    : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}

CurvatureTensor curvature_tensor_numeric(const NumericForm& f, const Vector& x, const TangentFrame& frame,
                                         const FDConfig& cfg) {
  TangentFrame local = frame;
  local.base = index_point_on_level(f, x);
  if (local.vectors.empty() || local.vectors.front().size() != f.dim()) {
    throw Error(ErrorCode::dimension_mismatch, "frame vectors");
  }
  const RadialChart chart(f, local);
  const Eigen::Index m = chart.dim();
  PairList pairs;
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = a; b < m; ++b) pairs.emplace_back(a, b);
  struct Value {
    CurvatureTensor r;
    double err, scale;
  };
  Value v = refine_step<Value>(cfg, [&](double h) {
    const auto [jh, jh2] = richardson_jets(chart, h, pairs);
    const Matrix inv_h = jh.g0.inverse();
    const Matrix inv_h2 = jh2.g0.inverse();
    Value out{CurvatureTensor(static_cast<int>(m)), 0.0, 0.0};
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index k = 0; k < m; ++k)
        for (Eigen::Index l = 0; l < m; ++l)
          for (Eigen::Index n = 0; n < m; ++n) {
            const double rh = riemann(jh, inv_h, i, k, l, n);
            const double rh2 = riemann(jh2, inv_h2, i, k, l, n);
            const double r = rh2 + (rh2 - rh) / 15.0;
            out.r(static_cast<int>(i), static_cast<int>(k), static_cast<int>(l), static_cast<int>(n)) = r;
            out.err = std::max(out.err, std::abs(rh - rh2) / 15.0);
            out.scale = std::max(out.scale, std::abs(r));
          }
    if (!std::isfinite(out.err)) out.err = std::numeric_limits<double>::infinity();
    return out;
  });
  CurvatureTensor out = std::move(v.r);
  const double err = v.err;
  out.err_estimate = err;
  if (!std::isfinite(err) || err > cfg.max_err) {
    throw Error(ErrorCode::ill_conditioned, "finite-difference error estimate above max_err");
  }
  return out;
}

namespace {

struct SurfaceForms {
  double e, f, g;
};

/// Gauss curvature at the grid centre from a 3×3 stencil of first
/// fundamental forms, stencil[i + 1][j + 1] at (iΔ, jΔ).
double brioschi(const SurfaceForms (&s)[3][3], double step) {
  auto du = [&](auto field) { return (field(s[2][1]) - field(s[0][1])) / (2 * step); };
  auto dv = [&](auto field) { return (field(s[1][2]) - field(s[1][0])) / (2 * step); };
  auto duu = [&](auto field) { return (field(s[2][1]) - 2 * field(s[1][1]) + field(s[0][1])) / (step * step); };
  auto dvv = [&](auto field) { return (field(s[1][2]) - 2 * field(s[1][1]) + field(s[1][0])) / (step * step); };
  auto duv = [&](auto field) {
    return (field(s[2][2]) - field(s[2][0]) - field(s[0][2]) + field(s[0][0])) / (4 * step * step);
  };
  const auto fe = [](const SurfaceForms& q) { return q.e; };
  const auto ff = [](const SurfaceForms& q) { return q.f; };
  const auto fg = [](const SurfaceForms& q) { return q.g; };

  const double e = s[1][1].e, f = s[1][1].f, g = s[1][1].g;
  const double eu = du(fe), ev = dv(fe), fu = du(ff), fv = dv(ff), gu = du(fg), gv = dv(fg);
  const double evv = dvv(fe), fuv = duv(ff), guu = duu(fg);

  Eigen::Matrix3d a;
  a << -0.5 * evv + fuv - 0.5 * guu, 0.5 * eu, fu - 0.5 * ev,  //
      fv - 0.5 * gu, e, f,                                    //
      0.5 * gv, f, g;
  Eigen::Matrix3d b;
  b << 0.0, 0.5 * ev, 0.5 * gu,  //
      0.5 * ev, e, f,            //
      0.5 * gu, f, g;
  const double w = e * g - f * f;
  return (a.determinant() - b.determinant()) / (w * w);
}

double surface_curvature(const NumericForm& f, const ConePoint& base, const Vector& e1, const Vector& e2,
                         double step, const SurfaceConfig& cfg) {
  auto sigma = [&](double t1, double t2) { return exp_map(f, base.x, t1 * e1 + t2 * e2, cfg.geodesic_steps); };
  const double delta = std::min(cfg.tangent_step, step / 4);
  SurfaceForms grid[3][3];
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      const double t1 = i * step, t2 = j * step;
      // Fourth-order stencil; near the boundary the surface bends on short scales.
      const Vector su = (8 * (sigma(t1 + delta, t2) - sigma(t1 - delta, t2)) -
                         (sigma(t1 + 2 * delta, t2) - sigma(t1 - 2 * delta, t2))) /
                        (12 * delta);
      const Vector sv = (8 * (sigma(t1, t2 + delta) - sigma(t1, t2 - delta)) -
                         (sigma(t1, t2 + 2 * delta) - sigma(t1, t2 - 2 * delta))) /
                        (12 * delta);
      const Matrix g = metric_matrix(f, sigma(t1, t2));
      grid[i + 1][j + 1] = {su.dot(g * su), su.dot(g * sv), sv.dot(g * sv)};
    }
  }
  return brioschi(grid, step);
}

}  // namespace

CurvatureSample sectional_curvature_surface(const NumericForm& f, const Vector& x, const Vector& l1,
                                            const Vector& l2, const SurfaceConfig& cfg) {
  const TangentFrame frame = plane_adapted_frame(f, x, l1, l2);
  const Vector& e1 = frame.vectors[0];
  const Vector& e2 = frame.vectors[1];
  // Near the cone boundary the shots can leave W₁ and the fixed grid is too
  // coarse; halve the spacing on a failed shot or a large Richardson gap.
  auto is_geodesic_error = [](const Error& e) {
    return e.code() == ErrorCode::left_index_cone || e.code() == ErrorCode::step_rejected ||
           e.code() == ErrorCode::chart_exit || e.code() == ErrorCode::not_on_level_set;
  };
  // Each pair of levels gives an h²-free value; the gap between successive
  // such values estimates its error. Stop once that gap stops shrinking.
  constexpr double none = std::numeric_limits<double>::quiet_NaN();
  double coarse = none, previous = none;
  double best_k = 0.0, best_err = std::numeric_limits<double>::infinity();
  double spacing = cfg.spacing;
  for (int attempt = 0; attempt <= cfg.max_halvings; ++attempt, spacing /= 2) {
    double k = 0.0;
    try {
      k = surface_curvature(f, frame.base, e1, e2, spacing, cfg);
    } catch (const Error& e) {
      if (!is_geodesic_error(e)) throw;
      if (std::isfinite(best_err)) break;
      if (attempt >= cfg.max_halvings) throw Error(ErrorCode::geodesic_failure, e.what());
      coarse = previous = none;
      continue;
    }
    if (!std::isnan(coarse)) {
      const double extrapolated = k + (k - coarse) / 3.0;
      if (!std::isnan(previous)) {
        const double err = std::abs(extrapolated - previous);
        if (err >= best_err) break;
        best_k = extrapolated;
        best_err = err;
        if (err <= cfg.accept_err * std::max(1.0, std::abs(extrapolated))) break;
      }
      previous = extrapolated;
    }
    coarse = k;
  }
  if (!std::isfinite(best_err)) throw Error(ErrorCode::geodesic_failure, "no usable surface spacing");
  if (best_err > cfg.max_err)
    throw Error(ErrorCode::ill_conditioned, "surface error estimate " + std::to_string(best_err));
  CurvatureSample out;
  out.point = frame.base.x;
  out.plane = {project_to_tangent(frame.base.grad, frame.base.x, l1),
               project_to_tangent(frame.base.grad, frame.base.x, l2)};
  out.K = best_k;
  out.err_estimate = best_err;
  out.method = CurvatureMethod::surface_expansion;
  return out;
}

}  // namespace kcurv
