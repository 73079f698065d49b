#pragma once

#include <string>

#include "topo/geodesic.hpp"

namespace topo {

enum class DistanceMethod { Analytic, Shooting, Graph };

std::string to_string(DistanceMethod m);

struct DistanceResult {
  double value = 0.0;
  // Unit tangents of the realising geodesic at the source and at the target.
  // Only the shooting method populates them (zero otherwise; the graph
  // method reports the direction of its first edge as initial_direction).
  Vec2 initial_direction = Vec2::Zero();
  Vec2 arrival_direction = Vec2::Zero();
  DistanceMethod method = DistanceMethod::Analytic;
  // analytic: 0. shooting: final boundary residual plus the integrator's
  // fixed-step error model. graph: stencil anisotropy plus one cell.
  double est_error = 0.0;
  // Another converged shooting candidate within cut_tolerance of the
  // minimum, i.e. the target is close to the cut locus of the source.
  bool cut_suspect = false;
  int candidates = 0;
};

struct ShootingOptions {
  int scan_angles = 256;
  double scan_step = 1e-2;
  double step = kDefaultGeodesicStep;
  // Local minima of the scan that are refined by Newton iteration.
  int max_refined = 8;
  int max_newton = 40;
  double residual_tolerance = 1e-11;
  double cut_tolerance = 1e-4;
};

// Analytic distance when the surface provides it, otherwise shooting.
DistanceResult distance(const MetricSurface& m, const Vec2& p, const Vec2& q,
                        const ShootingOptions& opt = {});

// Geodesic boundary-value solve: scan launch angles, then Newton on
// (launch angle, length) from every local minimum of the scan miss, and keep
// the shortest converged geodesic. Throws NumericalError carrying the best
// candidate when nothing converges.
DistanceResult distance_shooting(const MetricSurface& m, const Vec2& p, const Vec2& q,
                                 const ShootingOptions& opt = {});

// Shortest path in a grid graph over a box around p and q. `stencil` is the
// neighbourhood radius in cells: 1 is the 8-neighbour graph, larger values add
// every primitive offset (i, j) with max(|i|, |j|) <= stencil.
DistanceResult distance_graph(const MetricSurface& m, const Vec2& p, const Vec2& q,
                              int resolution, int stencil = 5);

}  // namespace topo
