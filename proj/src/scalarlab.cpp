#include "topo/scalarlab.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "topo/errors.hpp"
#include "topo/parallel.hpp"

namespace topo {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void domain(const char* fn, const std::string& why) {
  throw DomainError(std::string(fn) + ": " + why);
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

double f_one_minus_cos(double t) {
  if (!(t > 0.0 && t < kPi)) domain("f_one_minus_cos", "t = " + num(t) + " outside (0, pi)");
  if (t < kSeriesCrossover) return 0.5 + t * t / 24.0;
  // 1 - cos t = 2 sin^2(t/2)
  const double s = std::sin(0.5 * t);
  return 2.0 * s * s / (t * std::sin(t));
}

double g_cos_over(double t) {
  if (!(t > 0.0)) domain("g_cos_over", "t = " + num(t) + " must be positive");
  if (t > kPi) domain("g_cos_over", "t = " + num(t) + " exceeds pi");
  if (t > kPi - 1e-12) return -std::numeric_limits<double>::infinity();
  return std::cos(t) / (t * std::sin(t));
}

double h_cosh_over(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) domain("h_cosh_over", "t = " + num(t) + " must be positive");
  if (t < kSeriesCrossover) return 0.5 - t * t / 24.0;
  // cosh t - 1 = 2 sinh^2(t/2)
  const double s = std::sinh(0.5 * t);
  return 2.0 * s * s / (t * std::sinh(t));
}

double phi_spherical(double r, double r_bar) {
  if (!(r > 0.0 && r <= r_bar && r_bar <= kPi)) {
    domain("phi_spherical", "needs 0 < r <= r_bar <= pi, got r = " + num(r) + ", r_bar = " + num(r_bar));
  }
  return r_bar * std::sin(r_bar) * std::cos(r) - r * std::sin(r) * std::cos(r_bar);
}

double sinh_gap(double r, double r_bar) {
  if (!(r >= 0.0 && r <= r_bar)) {
    domain("sinh_gap", "needs 0 <= r <= r_bar, got r = " + num(r) + ", r_bar = " + num(r_bar));
  }
  return std::sinh(r - r_bar) + std::sinh(r_bar) - std::sinh(r);
}

double hyperbolic_ratio_bound_witness(double r, double r_bar) {
  if (!(r > 0.0 && r <= r_bar)) {
    domain("hyperbolic_ratio_bound_witness",
           "needs 0 < r <= r_bar, got r = " + num(r) + ", r_bar = " + num(r_bar));
  }
  return h_cosh_over(r_bar) - h_cosh_over(r);
}

std::string to_string(Direction d) {
  return d == Direction::NonDecreasing ? "non-decreasing" : "non-increasing";
}

MonotonicityReport check_monotone(const std::function<double(double)>& f, double lo,
                                  double hi, int n, Direction direction, double slack,
                                  int threads) {
  if (!(lo < hi)) throw DomainError("check_monotone: needs lo < hi");
  if (n < 2) throw DomainError("check_monotone: needs at least two samples");
  if (!(slack >= 0.0)) throw DomainError("check_monotone: slack must be non-negative");

  const auto count = static_cast<std::size_t>(n);
  std::vector<double> xs(count), ys(count);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < count; ++i) xs[i] = lo + step * static_cast<double>(i);
  xs.back() = hi;

  parallel_for(count, threads, [&](std::size_t i) {
    try {
      ys[i] = f(xs[i]);
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " (at sample t = " + num(xs[i]) + ")");
    }
  });

  MonotonicityReport rep;
  rep.lo = lo;
  rep.hi = hi;
  rep.samples = n;
  rep.direction = direction;
  rep.slack = slack;
  rep.worst_location = lo;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const double diff = ys[i + 1] - ys[i];
    double defect = direction == Direction::NonDecreasing ? -diff : diff;
    if (std::isnan(defect)) defect = std::numeric_limits<double>::infinity();
    // Strict comparison keeps the smaller location on ties.
    if (defect > rep.worst_violation) {
      rep.worst_violation = defect;
      rep.worst_location = xs[i];
    }
  }
  rep.pass = rep.worst_violation <= slack;
  return rep;
}

}  // namespace topo
