// kcurv: curvature of level sets of intersection forms.
//
// Exit codes: 0 ok, 1 bound violations / witness not found, 2 input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kcurv/analysis.hpp"
#include "kcurv/aronhold.hpp"
#include "kcurv/cicy.hpp"
#include "kcurv/cone.hpp"
#include "kcurv/curvature.hpp"
#include "kcurv/error.hpp"
#include "kcurv/form_io.hpp"
#include "kcurv/geodesic.hpp"

namespace {

using kcurv::Error;
using kcurv::ErrorCode;
using kcurv::Vector;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

Vector parse_vector(const std::string& s) {
  const auto parts = split(s, ',');
  Vector v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    try {
      std::size_t used = 0;
      v[static_cast<Eigen::Index>(i)] = std::stod(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::parse_error, "bad number in vector: " + s);
    }
  }
  return v;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error(ErrorCode::invalid_argument, "cannot write " + out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

nlohmann::json vec_json(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

struct Args {
  std::string form, out, point, plane, method = "fd", region = "orthant", dir, window = "-1.5,1.5,-1.5,1.5";
  std::string ambient, columns;
  int samples = 200, res = 200, fix = 0, steps = 1000, threads = 0;
  long budget = 10000;
  std::uint64_t seed = 7;
  double time = 1.0;
};

int run_invariants(const Args& a) {
  emit(kcurv::report_invariants(kcurv::read_form_file(a.form)), a.out);
  return 0;
}

int run_curvature(const Args& a) {
  const kcurv::Form f = kcurv::read_form_file(a.form);
  const kcurv::NumericForm nf(f);
  const Vector x = parse_vector(a.point);
  if (x.size() != f.dim()) throw Error(ErrorCode::dimension_mismatch, "--point has the wrong length");
  Vector l1, l2;
  if (a.plane.empty()) {
    const auto basis = kcurv::tangent_basis(nf, kcurv::normalize_to_level(nf, x));
    if (basis.size() < 2) throw Error(ErrorCode::unsupported_form, "need r >= 3 for a tangent plane");
    l1 = basis[0];
    l2 = basis[1];
  } else {
    const auto parts = split(a.plane, ';');
    if (parts.size() != 2) throw Error(ErrorCode::parse_error, "--plane expects v1;v2");
    l1 = parse_vector(parts[0]);
    l2 = parse_vector(parts[1]);
  }

  nlohmann::json j;
  j["schema_version"] = 1;
  j["form_hash"] = kcurv::form_hash_hex(f);
  if (a.method == "closed") {
    const double r = kcurv::sectional_curvature_closed(f, x);
    j["method"] = "closed_form_cubic";
    j["point"] = vec_json(kcurv::normalize_to_level(nf, x));
    j["K"] = r;
    j["err"] = 0.0;
  } else {
    const kcurv::CurvatureSample s = a.method == "surface" ? kcurv::sectional_curvature_surface(nf, x, l1, l2)
                                                           : kcurv::sectional_curvature_numeric(nf, x, l1, l2);
    j["method"] = std::string(kcurv::to_string(s.method));
    j["point"] = vec_json(s.point);
    j["plane"] = {vec_json(s.plane[0]), vec_json(s.plane[1])};
    j["K"] = s.K;
    j["err"] = s.err_estimate;
  }
  emit(j.dump(2), a.out);
  return 0;
}

int run_scan(const Args& a) {
  const kcurv::Form f = kcurv::read_form_file(a.form);
  kcurv::ScanOptions opts;
  opts.region = kcurv::parse_region(a.region);
  opts.samples = a.samples;
  opts.seed = a.seed;
  opts.threads = a.threads;
  const kcurv::ScanReport rep = kcurv::scan(f, opts);
  emit(kcurv::scan_report_json(rep), a.out);
  return rep.violations.empty() && rep.closed_form_mismatches.empty() ? 0 : 1;
}

int run_witness(const Args& a) {
  const kcurv::Form f = kcurv::read_form_file(a.form);
  const kcurv::WitnessResult w = kcurv::witness(f, a.budget, a.seed);
  emit(kcurv::witness_json(f, w), a.out);
  return w.found ? 0 : 1;
}

int run_region(const Args& a) {
  const kcurv::Form f = kcurv::read_form_file(a.form);
  const auto parts = split(a.window, ',');
  if (parts.size() != 4) throw Error(ErrorCode::parse_error, "--window expects xlo,xhi,ylo,yhi");
  kcurv::RegionGridSpec spec;
  spec.fix = a.fix;
  spec.x_lo = kcurv::Rational::parse(parts[0]);
  spec.x_hi = kcurv::Rational::parse(parts[1]);
  spec.y_lo = kcurv::Rational::parse(parts[2]);
  spec.y_hi = kcurv::Rational::parse(parts[3]);
  spec.resolution = a.res;
  emit(kcurv::region_csv(kcurv::region_grid(f, spec)), a.out);
  return 0;
}

int run_cicy(const Args& a) {
  const kcurv::CicyConfig cfg = kcurv::parse_cicy(a.ambient, a.columns);
  const kcurv::CicyInfo info = kcurv::validate(cfg);
  const kcurv::Form f = kcurv::intersection_form(cfg);
  nlohmann::json j;
  j["schema_version"] = 1;
  j["dim"] = info.dim;
  j["calabi_yau"] = info.calabi_yau;
  j["row_sums"] = info.row_sums;
  j["form_text"] = kcurv::to_string(f);
  j["form"] = nlohmann::json::parse(kcurv::form_to_json(f));
  if (a.out.empty() || a.out == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    // The file is a plain Form so it can be fed back through --form.
    kcurv::write_form_file(f, a.out);
    j.erase("form");
    std::cout << j.dump(2) << '\n';
  }
  return 0;
}

int run_geodesic(const Args& a) {
  const kcurv::Form f = kcurv::read_form_file(a.form);
  const kcurv::NumericForm nf(f);
  const Vector x = kcurv::normalize_to_level(nf, parse_vector(a.point));
  Vector v = parse_vector(a.dir);
  if (v.size() != f.dim()) throw Error(ErrorCode::dimension_mismatch, "--dir has the wrong length");
  v = kcurv::project_to_tangent(nf.gradient(x), x, v);
  const kcurv::Trajectory t = kcurv::geodesic_integrate(nf, x, v, a.time, a.steps);

  std::ostringstream s;
  s.precision(17);
  s << 't';
  for (int i = 0; i < f.dim(); ++i) s << ",x" << i;
  s << ",speed,drift\n";
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    s << t.times[k];
    for (Eigen::Index i = 0; i < t.points[k].size(); ++i) s << ',' << t.points[k][i];
    s << ',' << t.speeds[k] << ',' << t.level_drift[k] << '\n';
  }
  emit(s.str(), a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sectional curvature of level sets of homogeneous forms"};
  app.require_subcommand(1);
  Args a;

  auto* inv = app.add_subcommand("invariants", "Aronhold S, Hessian and bound polynomials of a ternary cubic");
  inv->add_option("--form", a.form, "Form JSON file")->required();
  inv->add_option("--out", a.out, "Output file (default stdout)");

  auto* curv = app.add_subcommand("curvature", "Sectional curvature at one point");
  curv->add_option("--form", a.form, "Form JSON file")->required();
  curv->add_option("--point", a.point, "Point x0,x1,...")->required();
  curv->add_option("--plane", a.plane, "Plane v1;v2 (default: first two tangent basis vectors)");
  curv->add_option("--method", a.method, "fd, closed or surface")
      ->check(CLI::IsMember({"fd", "closed", "surface"}));
  curv->add_option("--out", a.out, "Output file");

  auto* sc = app.add_subcommand("scan", "Random sectional curvatures against the bounds");
  sc->add_option("--form", a.form, "Form JSON file")->required();
  sc->add_option("--region", a.region, "orthant, ball or ball(R)");
  sc->add_option("--samples", a.samples, "Number of index-cone samples")->check(CLI::PositiveNumber);
  sc->add_option("--seed", a.seed, "Seed");
  sc->add_option("--threads", a.threads, "Worker threads (default KCURV_THREADS or all cores)");
  sc->add_option("--out", a.out, "Report JSON file");

  auto* wit = app.add_subcommand("witness", "Search for an index-cone point with -3 <= R <= 0");
  wit->add_option("--form", a.form, "Form JSON file")->required();
  wit->add_option("--budget", a.budget, "Attempts")->check(CLI::PositiveNumber);
  wit->add_option("--seed", a.seed, "Seed");
  wit->add_option("--out", a.out, "Output file");

  auto* reg = app.add_subcommand("region", "Exact region labels on an affine grid (CSV)");
  reg->add_option("--form", a.form, "Form JSON file")->required();
  reg->add_option("--fix", a.fix, "Coordinate held at 1")->check(CLI::Range(0, 2));
  reg->add_option("--window", a.window, "xlo,xhi,ylo,yhi")->allow_extra_args(false);
  reg->add_option("--res", a.res, "Grid points per axis")->check(CLI::Range(2, 100000));
  reg->add_option("--out", a.out, "CSV file");

  auto* ci = app.add_subcommand("cicy", "Intersection form of a complete intersection");
  ci->add_option("--ambient", a.ambient, "Projective space dimensions, e.g. 3,2,2")->required();
  ci->add_option("--columns", a.columns, "Columns separated by ';', e.g. \"1,1,0;2,1,1\"");
  ci->add_option("--out", a.out, "Write the Form JSON here");

  auto* geo = app.add_subcommand("geodesic", "Integrate a geodesic on F = 1 (CSV)");
  geo->add_option("--form", a.form, "Form JSON file")->required();
  geo->add_option("--point", a.point, "Start point (normalized to F = 1)")->required();
  geo->add_option("--dir", a.dir, "Initial direction (projected to the tangent space)")->required();
  geo->add_option("--time", a.time, "Parameter length T");
  geo->add_option("--steps", a.steps, "RK4 steps")->check(CLI::PositiveNumber);
  geo->add_option("--out", a.out, "CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*inv) return run_invariants(a);
    if (*curv) return run_curvature(a);
    if (*sc) return run_scan(a);
    if (*wit) return run_witness(a);
    if (*reg) return run_region(a);
    if (*ci) return run_cicy(a);
    if (*geo) return run_geodesic(a);
  } catch (const Error& e) {
    std::cerr << "kcurv: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "kcurv: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
