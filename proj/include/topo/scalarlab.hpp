#pragma once

#include <functional>
#include <string>

namespace topo {

// Below this argument the functions with a removable singularity at 0 switch
// to their Taylor expansion.
inline constexpr double kSeriesCrossover = 1e-4;

// (1 - cos t) / (t sin t) on (0, pi). Increasing.
double f_one_minus_cos(double t);

// cos t / (t sin t) on (0, pi]. Decreasing. Returns -infinity at t = pi.
double g_cos_over(double t);

// (cosh t - 1) / (t sinh t) on (0, inf). Decreasing.
double h_cosh_over(double t);

// r_bar sin(r_bar) cos(r) - r sin(r) cos(r_bar), non-negative for
// 0 < r <= r_bar <= pi.
double phi_spherical(double r, double r_bar);

// sinh(r - r_bar) + sinh(r_bar) - sinh(r), non-negative for 0 <= r <= r_bar.
double sinh_gap(double r, double r_bar);

// h(r_bar) - h(r) with h = h_cosh_over: the bracket that blocks a ratio bound
// in negative curvature. Never positive for 0 < r <= r_bar.
double hyperbolic_ratio_bound_witness(double r, double r_bar);

enum class Direction { NonDecreasing, NonIncreasing };

std::string to_string(Direction d);

struct MonotonicityReport {
  double lo = 0.0;
  double hi = 0.0;
  int samples = 0;
  Direction direction = Direction::NonDecreasing;
  double worst_violation = 0.0;  // >= 0
  double worst_location = 0.0;   // left end of the worst adjacent pair
  double slack = 0.0;
  bool pass = false;
};

// Samples f at n uniformly spaced points of [lo, hi] (endpoints included)
// and records the largest adjacent-pair defect against `direction`.
// Domain errors raised by f are rethrown with the offending sample point.
// `threads` only affects how samples are evaluated, never the report.
MonotonicityReport check_monotone(const std::function<double(double)>& f, double lo,
                                  double hi, int n, Direction direction, double slack,
                                  int threads = 1);

}  // namespace topo
