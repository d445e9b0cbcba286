#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kcurv/curvature.hpp"
#include "kcurv/form.hpp"

namespace kcurv {

struct RegionSpec {
  enum class Kind { orthant, ball };
  Kind kind = Kind::orthant;
  /// Radius of the ball region; curvature is scale invariant so this only
  /// affects the reported points.
  double radius = 1.0;
};

std::string to_string(const RegionSpec& r);
RegionSpec parse_region(const std::string& text);

struct ScanOptions {
  RegionSpec region;
  int samples = 200;
  std::uint64_t seed = 7;
  FDConfig fd;
  /// 0 = use KCURV_THREADS if set, else the hardware concurrency.
  int threads = 0;
  /// Floor of the closed-form cross-check tolerance max(floor, 10·err).
  double closed_form_floor = 1e-4;
};

struct ScanViolation {
  int index = 0;
  Vector point;
  std::array<Vector, 2> plane;
  double K = 0.0;
  double err = 0.0;
};

struct ClosedFormMismatch {
  int index = 0;
  double K_numeric = 0.0;
  double K_closed = 0.0;
  double err = 0.0;
};

struct ScanReport {
  std::uint64_t form_hash = 0;
  int degree = 0;
  int dim = 0;
  RegionSpec region;
  int samples = 0;
  std::uint64_t seed = 0;
  /// Points drawn, including those rejected as outside the index cone.
  long attempts = 0;
  /// Samples with a curvature value (samples − skipped).
  int evaluated = 0;
  int skipped = 0;
  double k_min = 0.0;
  double k_max = 0.0;
  double max_err = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::vector<ScanViolation> violations;
  bool closed_form_checked = false;
  int closed_form_compared = 0;
  double closed_form_max_diff = 0.0;
  std::vector<ClosedFormMismatch> closed_form_mismatches;
};

/// Curvature of random tangent planes at N random index-cone points. Attempt j
/// draws from its own stream mt19937_64(seed_seq{seed, j}), so the report does
/// not depend on the thread count.
ScanReport scan(const Form& f, const ScanOptions& opts);
std::string scan_report_json(const ScanReport& r);

struct WitnessResult {
  bool found = false;
  Vector point;
  double R = 0.0;
  long attempts = 0;
  std::string diagnostic;
};

/// First index-cone point with −3 ≤ R ≤ 0, sampling mostly near F = 0.
WitnessResult witness(const Form& f, long budget, std::uint64_t seed);
std::string witness_json(const Form& f, const WitnessResult& w);

struct RegionLabel {
  Rational x;
  Rational y;
  int sign_f = 0;
  int sign_h = 0;
  bool in_index_cone = false;
  int sign_upper = 0;
  int sign_lower = 0;
};

struct RegionGridSpec {
  /// Coordinate held at 1; the other two, in order, are the grid axes.
  int fix = 0;
  Rational x_lo = Rational(-3, 2), x_hi = Rational(3, 2);
  Rational y_lo = Rational(-3, 2), y_hi = Rational(3, 2);
  int resolution = 200;
};

/// Exact labels on a resolution × resolution grid, row-major in y then x.
std::vector<RegionLabel> region_grid(const Form& f, const RegionGridSpec& spec);
std::string region_csv(const std::vector<RegionLabel>& labels);
/// The ambient point of a grid label.
RationalVector region_point(const RegionGridSpec& spec, const RegionLabel& label);

std::string report_invariants(const Form& f);

/// Worker count from KCURV_THREADS or the hardware.
int default_threads();

}  // namespace kcurv
