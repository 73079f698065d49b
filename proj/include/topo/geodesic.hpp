#pragma once

#include <vector>

#include "topo/surface.hpp"

namespace topo {

inline constexpr double kChristoffelStep = 1e-5;
inline constexpr double kCurvatureStep = 1e-4;
inline constexpr double kDefaultGeodesicStep = 1e-3;

// Analytic symbols when the surface provides them, otherwise central
// differences of the metric with step kChristoffelStep. Throws DomainError
// when p is closer than two difference steps to the chart boundary.
Christoffel christoffel(const MetricSurface& m, const Vec2& p);

// Always the finite-difference route; used to cross-check analytic symbols.
Christoffel christoffel_fd(const MetricSurface& m, const Vec2& p, double h = kChristoffelStep);

// Gaussian curvature from (E, F, G) and their finite differences (Brioschi
// formula; the two-term orthogonal form when the chart has F == 0).
double gaussian_curvature(const MetricSurface& m, const Vec2& p);

// Unit vector at p making angle `theta` with the first vector of the
// Gram-Schmidt frame (d/du normalised, then d/dv orthogonalised).
Vec2 frame_direction(const MetricSurface& m, const Vec2& p, double theta);

// Angle between two tangent vectors at p, in [0, pi].
double angle_between(const MetricSurface& m, const Vec2& p, const Vec2& u, const Vec2& v);

// Rescales v to unit metric length at p.
Vec2 normalize(const MetricSurface& m, const Vec2& p, const Vec2& v);

struct GeodesicSample {
  double s = 0.0;
  Vec2 position = Vec2::Zero();
  Vec2 tangent = Vec2::Zero();
};

struct GeodesicPath {
  std::vector<GeodesicSample> samples;
  double step = 0.0;
  // Set when the path left the chart before reaching the requested length.
  bool truncated = false;

  const GeodesicSample& end() const { return samples.back(); }
};

// Fixed-step classical RK4 on x'' + Gamma(x', x') = 0. The step actually used
// is length / ceil(length / step) so the last sample lands on `length`.
GeodesicPath integrate_geodesic(const MetricSurface& m, const Vec2& p, const Vec2& dir,
                                double length, double step = kDefaultGeodesicStep);

// Endpoint and arriving tangent only, without storing samples.
struct GeodesicEnd {
  Vec2 position = Vec2::Zero();
  Vec2 tangent = Vec2::Zero();
  bool truncated = false;
};
GeodesicEnd shoot(const MetricSurface& m, const Vec2& p, const Vec2& velocity, double length,
                  double step = kDefaultGeodesicStep);

// exp_p(v): follows the geodesic with initial direction v/|v| for |v|.
Vec2 exp_map(const MetricSurface& m, const Vec2& p, const Vec2& v,
             double step = kDefaultGeodesicStep);

}  // namespace topo
