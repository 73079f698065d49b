#pragma once

// 2-D Riemannian charts and the built-in catalogue of test surfaces.
//
// Catalogue (name, params, chart coordinates, safe zone):
//   euclidean_plane       ()            (x, y)      |x|,|y| <= 8, length <= 8
//   sphere                (R)           (theta,phi) theta in [0.2, pi-0.2], length <= pi R
//   hyperbolic_disk       ()            (x, y)      Poincare disk, |p| <= 0.95
//   paraboloid            (c)           (x, y)      z = c (x^2 + y^2), |x|,|y| <= 3/c, length <= 2/c
//   revolution            (s_lo, s_hi, c0, c1, ...) (s, phi) meridian arc length s,
//                         radius f(s) = c0 + c1 s + ..., s inset by 10%, length <= (s_hi - s_lo)/2
// Experiments must keep every computed geodesic inside the safe zone; the
// charts are only local pictures of complete surfaces and minimality of
// geodesics is assumed only there.

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "topo/spaceform.hpp"

namespace topo {

using Vec2 = Eigen::Vector2d;

// First fundamental form at a point.
struct Metric {
  double E = 1.0;
  double F = 0.0;
  double G = 1.0;

  double det() const { return E * G - F * F; }
  double inner(const Vec2& a, const Vec2& b) const {
    return E * a.x() * b.x() + F * (a.x() * b.y() + a.y() * b.x()) + G * a.y() * b.y();
  }
  double norm(const Vec2& a) const;
};

// Gamma^k_ij stored as symbols[k][i][j], coordinates indexed 0 = u, 1 = v.
struct Christoffel {
  std::array<std::array<std::array<double, 2>, 2>, 2> symbols{};

  double operator()(int k, int i, int j) const { return symbols[k][i][j]; }
  // -Gamma^k_ij v^i v^j
  Vec2 acceleration(const Vec2& v) const;
};

// Axis-aligned rectangle or origin-centred disk in chart coordinates.
class ChartRegion {
 public:
  static ChartRegion rectangle(double u_lo, double u_hi, double v_lo, double v_hi);
  static ChartRegion disk(double radius);

  // True when p lies inside with at least `margin` coordinate distance to
  // the boundary.
  bool contains(const Vec2& p, double margin = 0.0) const;
  bool is_disk() const { return disk_; }
  // Bounding box as (u_lo, u_hi, v_lo, v_hi).
  std::array<double, 4> bounds() const { return box_; }

 private:
  bool disk_ = false;
  double radius_ = 0.0;
  std::array<double, 4> box_{};
};

struct SafeZone {
  ChartRegion region;
  double max_length = 0.0;
};

class MetricSurface {
 public:
  using MetricFn = std::function<Metric(const Vec2&)>;
  using ChristoffelFn = std::function<Christoffel(const Vec2&)>;
  using DistanceFn = std::function<double(const Vec2&, const Vec2&)>;

  struct Parts {
    std::string name;
    std::vector<double> params;
    ChartRegion domain;
    SafeZone safe;
    MetricFn metric;
    ChristoffelFn christoffel;  // optional
    DistanceFn distance;        // optional
    std::optional<CurvatureSign> curvature_bound;
    bool orthogonal = false;    // F == 0 everywhere
  };

  // Validates positive-definiteness on a sampled grid of the domain.
  explicit MetricSurface(Parts parts);

  const std::string& name() const { return p_.name; }
  const std::vector<double>& params() const { return p_.params; }
  const ChartRegion& domain() const { return p_.domain; }
  const SafeZone& safe_zone() const { return p_.safe; }
  std::optional<CurvatureSign> curvature_bound() const { return p_.curvature_bound; }
  bool orthogonal() const { return p_.orthogonal; }
  bool has_analytic_christoffel() const { return static_cast<bool>(p_.christoffel); }
  bool has_analytic_distance() const { return static_cast<bool>(p_.distance); }

  Metric metric(const Vec2& p) const { return p_.metric(p); }
  Christoffel analytic_christoffel(const Vec2& p) const { return p_.christoffel(p); }
  double analytic_distance(const Vec2& p, const Vec2& q) const { return p_.distance(p, q); }

  // "name(p1,p2,...)" for reports.
  std::string label() const;

 private:
  Parts p_;
};

MetricSurface builtin_surface(std::string_view name, std::span<const double> params = {});

// Names accepted by builtin_surface.
std::vector<std::string> builtin_surface_names();

}  // namespace topo
