#pragma once

// Hinge experiments on a MetricSurface against the space form of curvature k.
//
// A hinge is a vertex p with unit directions dir1, dir2 enclosing angle
// alpha. gamma_1 and gamma_2 are the unit-speed geodesics along them. The
// hinge series measures r(t) = d(gamma_1(b), gamma_2(t)); the star series
// measures r*(t) = d(gamma_1(t), gamma_2(t)). The model values r_bar come
// from the law of cosines with the same side lengths and angle.
//
// Sign conventions of CheckReport::worst_margin:
//   toponogov                 max(r - r_bar), pass iff <= slack
//   monotonicity checks       max adjacent defect (positive = wrong
//                             direction), pass iff <= slack
//   corollaries               min(lhs - rhs), pass iff >= -slack
//   first_variation           max |dr/dt - cos beta| (or star analogue)

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "topo/distance.hpp"
#include "topo/spaceform.hpp"
#include "topo/surface.hpp"

namespace topo {

enum class DistanceMode { Auto, Shooting };

struct Tolerances {
  double geo_tol = 1e-6;
  double mono_slack = 1e-9;
  double deriv_tol = 1e-4;
};

// Slack ladder: analytic distances are exact to round-off, shooting
// distances carry est_error up to 1e-5.
Tolerances default_tolerances(bool analytic_distances);
inline constexpr double kAnalyticSlack = 1e-9;
inline constexpr double kShootingSlack = 1e-4;
inline constexpr double kModelDerivativeTol = 1e-8;
inline constexpr double kAngleConsistencyTol = 1e-9;

struct HingeConfig {
  std::shared_ptr<const MetricSurface> surface;
  Vec2 vertex = Vec2::Zero();
  Vec2 dir1 = Vec2::Zero();  // unit in the metric at vertex
  Vec2 dir2 = Vec2::Zero();
  double alpha = 0.0;
  double b = 0.0;
  CurvatureSign k = CurvatureSign::Zero;
  std::vector<double> t_grid;
  Tolerances tol;
  double step = kDefaultGeodesicStep;
  DistanceMode distance_mode = DistanceMode::Auto;
  ShootingOptions shooting;
  int threads = 1;

  bool analytic_distances() const {
    return distance_mode == DistanceMode::Auto && surface->has_analytic_distance();
  }
};

// Hinge with directions given as angles in the orthonormal frame at the
// vertex (see frame_direction); alpha = |theta2 - theta1|.
HingeConfig make_hinge(std::shared_ptr<const MetricSurface> surface, const Vec2& vertex, double theta1,
                       double theta2, double b, CurvatureSign k, std::vector<double> t_grid);

// n uniformly spaced points on [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, int n);

// Throws ConfigError unless the hinge is well formed: unit directions,
// alpha = angle_between(dir1, dir2) within 1e-9 and in (0, pi], b > 0, a
// strictly increasing positive grid, and every geodesic of length
// max(b, t_max) (plus `extra_length`) inside the surface's safe zone.
// When `require_bound`, the surface must declare sec >= k' with k' >= k.
void validate_hinge(const HingeConfig& cfg, bool require_bound = true, double extra_length = 0.0);

enum class SeriesMode { Hinge, Star };

struct ComparisonSeries {
  SeriesMode mode = SeriesMode::Hinge;
  CurvatureSign k = CurvatureSign::Zero;
  double alpha = 0.0;
  double b = 0.0;
  double geo_tol = 0.0;
  bool analytic = true;  // distances came from a closed form
  std::vector<double> t, r, r_bar, ratio, psi;
  std::vector<bool> cut_flag;
  std::vector<bool> ratio_defined;  // r_bar > geo_tol
  double max_est_error = 0.0;
};

struct CheckReport {
  std::string claim;
  bool pass = false;
  double worst_margin = 0.0;
  int worst_index = -1;
  double slack = 0.0;
  std::vector<int> excluded;     // indices not used by the check
  std::vector<int> cut_flagged;  // suspected cut points in the series
  std::string note;
};

ComparisonSeries compute_series(const HingeConfig& cfg);
ComparisonSeries compute_star_series(const HingeConfig& cfg);

CheckReport check_toponogov(const ComparisonSeries& s, double slack);
// Ratio r/r_bar non-increasing (claim thm11A or thm31A by series mode).
// Throws UnsupportedCurvature for k = -1 and ConfigError outside the proven
// range (hinge: t <= b, and b <= pi/2 for k = +1; star: t <= pi/2 for k = +1).
CheckReport check_ratio_monotone(const ComparisonSeries& s, double slack);
// Difference r_bar - r non-decreasing (thm11B or thm31B), same ranges.
CheckReport check_diff_monotone(const ComparisonSeries& s, double slack);

struct FirstVariationSample {
  double t = 0.0;
  double beta = 0.0;
  double beta_bar = 0.0;
  double gamma_angle = 0.0;  // star mode only
  double dr_dt_numeric = 0.0;
  double dr_bar_dt_numeric = 0.0;
  double defect = 0.0;        // |dr/dt - cos beta| or |dr*/dt - (cos beta + cos gamma)|
  double model_defect = 0.0;  // |dr_bar/dt - cos beta_bar| or |dr_bar*/dt - 2 cos beta_bar|
};

inline constexpr double kFirstVariationStep = 1e-4;

// Throws DomainError when t is a suspected cut point.
FirstVariationSample first_variation_check(const HingeConfig& cfg, double t, bool star);
// Runs first_variation_check at every interior grid point that is not cut-flagged.
CheckReport check_first_variation(const HingeConfig& cfg, bool star);

// r(t) >= d cos(alpha/2) over the grid, d = d(gamma_1(b), gamma_2(b)).
// Needs a surface with sec >= 0 and a flat model (k = 0).
CheckReport check_corollary_1(const HingeConfig& cfg, double slack);
double corollary2_margin(double d1, double d2, double l1, double l2);
// d(gamma_1(l1), gamma_2(l1)) >= (l1/l2) d(gamma_1(l2), gamma_2(l2)).
CheckReport check_corollary_2(const HingeConfig& cfg, double l1, double l2, double slack);

struct TwoParamGrid {
  std::vector<double> t, s;
  // Row-major [i * s.size() + j] for (t_i, s_j).
  std::vector<double> r, r_bar, ratio, psi;
  std::vector<bool> cut_flag;
  std::vector<CheckReport> reports;
};

// r(t, s) = d(gamma_1(t), gamma_2(s)) on cfg.t_grid x s_grid, with row and
// column monotonicity on the triangular regions s <= t and t <= s.
TwoParamGrid compute_two_param_grid(const HingeConfig& cfg, const std::vector<double>& s_grid,
                                    double slack);

enum class ProbeMode { TGreaterThanB, RatioHyperbolic };

struct ProbeResult {
  static constexpr const char* kMarker = "EXPLORATORY";
  ComparisonSeries series;
  // Sign pattern of adjacent defects (positive = against the claimed direction).
  int ratio_positive = 0, ratio_negative = 0;
  int psi_positive = 0, psi_negative = 0;
  double ratio_worst = 0.0, psi_worst = 0.0;
};

// Descriptive only; never asserts.
ProbeResult probe_open_region(const HingeConfig& cfg, ProbeMode mode);

}  // namespace topo
