#include <benchmark/benchmark.h>

#include <cmath>

#include <kcurv/aronhold.hpp>
#include <kcurv/cicy.hpp>
#include <kcurv/cone.hpp>
#include <kcurv/curvature.hpp>
#include <kcurv/fixtures.hpp>
#include <kcurv/geodesic.hpp>

using namespace kcurv;

namespace {

Vector vec3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

Form cicy1() { return intersection_form({{3, 2, 2}, {{1, 1, 0}, {1, 1, 0}, {2, 1, 1}, {0, 0, 2}}}); }

void BM_SectionalFD_Nodal(benchmark::State& st) {
  const NumericForm f(fixtures::nodal_cubic());
  const Vector x = vec3(1, -0.5, 0.1), l1 = vec3(0.3, 1, 0), l2 = vec3(0, 0.2, 1);
  for (auto _ : st) benchmark::DoNotOptimize(sectional_curvature_numeric(f, x, l1, l2).K);
}
BENCHMARK(BM_SectionalFD_Nodal);

void BM_SectionalFD_Hermitian(benchmark::State& st) {
  const NumericForm f(fixtures::hermitian_determinant(3));
  Vector id = Vector::Zero(9);
  id.head(3).setOnes();
  Vector a = Vector::Zero(9), b = Vector::Zero(9);
  a[0] = 1;
  a[1] = -1;
  b[3] = 1;
  for (auto _ : st) benchmark::DoNotOptimize(sectional_curvature_numeric(f, id, a, b).K);
}
BENCHMARK(BM_SectionalFD_Hermitian);

void BM_ClosedForm(benchmark::State& st) {
  const Form f = fixtures::nodal_cubic();
  const CubicInvariants inv = cubic_invariants(f);
  const Vector x = vec3(1, -0.5, 0.1);
  for (auto _ : st) benchmark::DoNotOptimize(sectional_curvature_closed(f, inv, x));
}
BENCHMARK(BM_ClosedForm);

void BM_Geodesic(benchmark::State& st) {
  const NumericForm f(fixtures::diagonal(3, 3));
  const Vector x = normalize_to_level(f, vec3(1.5, 1, 1));
  Vector v = project_to_tangent(f.gradient(x), x, vec3(0, 1, -1));
  v *= 0.3 / std::sqrt(metric(f, x, v, v));
  for (auto _ : st) benchmark::DoNotOptimize(exp_map(f, x, v, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_Geodesic)->Arg(100)->Arg(1000);

void BM_AronholdS(benchmark::State& st) {
  const Form f = cicy1();
  for (auto _ : st) benchmark::DoNotOptimize(aronhold_S(f));
}
BENCHMARK(BM_AronholdS);

void BM_HessianDetPoly(benchmark::State& st) {
  const Form f = cicy1();
  for (auto _ : st) benchmark::DoNotOptimize(hessian_det_poly(f).size());
}
BENCHMARK(BM_HessianDetPoly);

}  // namespace

BENCHMARK_MAIN();
