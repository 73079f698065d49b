#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Geometry>

#include "doctest.h"
#include "topo/distance.hpp"
#include "topo/errors.hpp"
#include "topo/geodesic.hpp"
#include "topo/surface.hpp"

using namespace topo;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

MetricSurface make(std::string_view name, std::vector<double> params = {}) { return builtin_surface(name, params); }

// Great circle through the chart point p of sphere(R) with chart velocity v.
Vec2 great_circle(double R, const Vec2& p, const Vec2& v, double s) {
  const double th = p.x(), ph = p.y();
  const Eigen::Vector3d x0(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
  const Eigen::Vector3d e_th(std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th));
  const Eigen::Vector3d e_ph(-std::sin(th) * std::sin(ph), std::sin(th) * std::cos(ph), 0.0);
  const Eigen::Vector3d tangent = v.x() * e_th + v.y() * e_ph;  // unit on the unit sphere times R
  const Eigen::Vector3d x = std::cos(s / R) * x0 + std::sin(s / R) * tangent;
  return {std::acos(std::clamp(x.z(), -1.0, 1.0)), std::atan2(x.y(), x.x())};
}

}  // namespace

TEST_CASE("catalogue metrics") {
  const auto plane = make("euclidean_plane");
  const Metric g = plane.metric({1.3, -2.0});
  CHECK(g.E == 1.0);
  CHECK(g.F == 0.0);
  CHECK(g.G == 1.0);

  const auto s1 = make("sphere", {1.0});
  const Metric gs = s1.metric({pi / 3, 0.4});
  CHECK(gs.E == Approx(1.0));
  CHECK(gs.F == 0.0);
  CHECK(gs.G == Approx(0.75).epsilon(1e-15));

  const auto disk = make("hyperbolic_disk");
  const Vec2 p(0.3, -0.2);
  const double lam = 4 / std::pow(1 - p.squaredNorm(), 2);
  CHECK(disk.metric(p).E == Approx(lam).epsilon(1e-15));
  CHECK(disk.metric(p).G == Approx(lam).epsilon(1e-15));
  CHECK(disk.metric(p).F == 0.0);

  CHECK_THROWS_AS(make("torus"), DomainError);
  CHECK_THROWS_AS(make("sphere"), DomainError);
  CHECK_THROWS_AS(make("sphere", {-1.0}), DomainError);
  CHECK_THROWS_AS(make("revolution", {0.0, 1.0, -1.0}), DomainError);
  CHECK(builtin_surface_names().size() == 5);
}

TEST_CASE("declared curvature bounds") {
  CHECK(make("euclidean_plane").curvature_bound() == CurvatureSign::Zero);
  CHECK(make("sphere", {1.0}).curvature_bound() == CurvatureSign::Positive);
  CHECK(make("sphere", {0.5}).curvature_bound() == CurvatureSign::Positive);
  CHECK(make("sphere", {2.0}).curvature_bound() == CurvatureSign::Zero);
  CHECK(make("hyperbolic_disk").curvature_bound() == CurvatureSign::Negative);
  CHECK(make("paraboloid", {1.0}).curvature_bound() == CurvatureSign::Zero);
  // f = 1 + 0.2 s^2 has K = -0.4 / f < 0, bounded below by -1.
  CHECK(make("revolution", {-1.5, 1.5, 1.0, 0.0, 0.2}).curvature_bound() == CurvatureSign::Negative);
  // f = 1 - s^2/2 has K = 1/f >= 1.
  CHECK(make("revolution", {-0.6, 0.6, 1.0, 0.0, -0.5}).curvature_bound() == CurvatureSign::Positive);
}

TEST_CASE("christoffel symbols: analytic against finite differences") {
  const auto s1 = make("sphere", {1.0});
  const Vec2 p(pi / 3, 0.2);
  const Christoffel c = christoffel(s1, p);
  CHECK(c.symbols[0][1][1] == Approx(-std::sin(pi / 3) * std::cos(pi / 3)).epsilon(1e-14));
  CHECK(c.symbols[1][0][1] == Approx(1 / std::tan(pi / 3)).epsilon(1e-14));
  CHECK(c.symbols[1][1][0] == Approx(1 / std::tan(pi / 3)).epsilon(1e-14));
  CHECK(c.symbols[0][0][0] == 0.0);

  for (const auto& s : {make("sphere", {0.5}), make("paraboloid", {1.0}), make("hyperbolic_disk"),
                        make("revolution", {-1.5, 1.5, 1.0, 0.0, 0.2})}) {
    for (const Vec2& q : {Vec2(0.7, 0.3), Vec2(1.2, -0.4), Vec2(0.2, 0.1)}) {
      if (!s.domain().contains(q, 1e-3)) continue;
      const Christoffel a = christoffel(s, q), f = christoffel_fd(s, q);
      for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) CHECK(a.symbols[k][i][j] == Approx(f.symbols[k][i][j]).epsilon(1e-7).scale(1));
    }
  }
  const auto plane = make("euclidean_plane");
  const Christoffel z = christoffel(plane, {0.5, 0.5});
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(z.symbols[k][i][j] == 0.0);
}

TEST_CASE("gaussian curvature") {
  CHECK(std::abs(gaussian_curvature(make("euclidean_plane"), {0.3, 0.1})) <= 1e-8);
  for (double R : {0.5, 1.0, 2.0}) {
    CHECK(gaussian_curvature(make("sphere", {R}), {1.1, 0.4}) == Approx(1 / (R * R)).epsilon(1e-5));
  }
  const auto disk = make("hyperbolic_disk");
  for (const Vec2& p : {Vec2(0, 0), Vec2(0.4, -0.3), Vec2(-0.7, 0.1)}) {
    CHECK(gaussian_curvature(disk, p) == Approx(-1.0).epsilon(1e-5));
  }
  // z = c (u^2 + v^2): K = 4c^2 / (1 + 4c^2 (u^2 + v^2))^2.
  for (double c : {0.5, 1.0}) {
    const auto par = make("paraboloid", {c});
    const Vec2 p(0.3, -0.4);
    const double w = 1 + 4 * c * c * p.squaredNorm();
    CHECK(gaussian_curvature(par, p) == Approx(4 * c * c / (w * w)).epsilon(1e-6));
  }
  // Revolution: K = -f''/f.
  const auto rev = make("revolution", {-1.5, 1.5, 1.0, 0.0, 0.2});
  const double s = 0.6, f = 1 + 0.2 * s * s;
  CHECK(gaussian_curvature(rev, {s, 0.3}) == Approx(-0.4 / f).epsilon(1e-5));
  CHECK_THROWS_AS(gaussian_curvature(disk, {0.9999, 0}), DomainError);
}

TEST_CASE("frame directions and angles") {
  const auto s = make("paraboloid", {1.0});
  const Vec2 p(0.4, -0.2);
  const Metric g = s.metric(p);
  const Vec2 e1 = frame_direction(s, p, 0), e2 = frame_direction(s, p, pi / 2);
  CHECK(g.norm(e1) == Approx(1.0).epsilon(1e-14));
  CHECK(g.norm(e2) == Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(g.inner(e1, e2)) < 1e-14);
  for (double a : {0.1, 1.0, 2.0, 3.0}) {
    CHECK(angle_between(s, p, e1, frame_direction(s, p, a)) == Approx(a).epsilon(1e-12));
  }
  const auto plane = make("euclidean_plane");
  CHECK(angle_between(plane, {0, 0}, {1, 0}, {0, 1}) == Approx(pi / 2));
  CHECK(angle_between(plane, {0, 0}, {1, 2}, {1, 2}) == Approx(0.0));
  CHECK(angle_between(make("sphere", {1.0}), {pi / 3, 0}, {1, 0}, {0, 1}) == Approx(pi / 2));
  CHECK_THROWS_AS(angle_between(plane, {0, 0}, {0, 0}, {1, 0}), DomainError);
}

TEST_CASE("geodesics: straight lines and great circles") {
  const auto plane = make("euclidean_plane");
  const GeodesicPath line = integrate_geodesic(plane, {0, 0}, {1, 0}, 2.0);
  CHECK_FALSE(line.truncated);
  CHECK(line.end().position.x() == Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(line.end().position.y()) < 1e-12);

  for (double R : {1.0, 0.5}) {
    const auto sph = make("sphere", {R});
    const Vec2 p(pi / 2, 0.0);
    for (double theta : {0.3, pi / 2, 2.0}) {
      const Vec2 v = frame_direction(sph, p, theta);
      const Vec2 v_unit_sphere = v * R;  // chart velocity of the unit-sphere great circle
      for (double L : {pi / 2 * R, 1.0 * R}) {
        const Vec2 end = shoot(sph, p, v, L, 1e-3).position;
        const Vec2 ref = great_circle(R, p, v_unit_sphere, L);
        CHECK((end - ref).norm() < 1e-6);
      }
    }
  }
}

TEST_CASE("geodesics conserve speed and stop at the chart boundary") {
  const auto par = make("paraboloid", {1.0});
  const Vec2 p(0.15, -0.1);
  const GeodesicPath path = integrate_geodesic(par, p, frame_direction(par, p, 0.4), 2.0);
  double drift = 0.0;
  for (const auto& s : path.samples) drift = std::max(drift, std::abs(par.metric(s.position).norm(s.tangent) - 1));
  CHECK(drift / 2.0 <= 1e-8);
  CHECK(path.samples.size() == 2001);

  const auto disk = make("hyperbolic_disk");
  const GeodesicPath out = integrate_geodesic(disk, {0, 0}, frame_direction(disk, {0, 0}, 0), 20.0);
  CHECK(out.truncated);
  CHECK(out.samples.back().s < 20.0);
  CHECK_THROWS_AS(exp_map(disk, {0, 0}, {5, 0}), DomainError);
  CHECK_THROWS_AS(integrate_geodesic(par, p, {2, 0}, 1.0), DomainError);
  CHECK(exp_map(par, p, {0, 0}) == p);
}

TEST_CASE("distance: closed forms and shooting") {
  const auto plane = make("euclidean_plane");
  CHECK(distance(plane, {0, 0}, {3, 4}).value == Approx(5.0).epsilon(1e-15));
  const auto s1 = make("sphere", {1.0});
  const auto quarter = distance(s1, {pi / 2, 0}, {pi / 2, pi / 2});
  CHECK(quarter.value == Approx(pi / 2).epsilon(1e-15));
  CHECK(quarter.method == DistanceMethod::Analytic);

  const auto disk = make("hyperbolic_disk");
  for (const auto* m : {&plane, &s1, &disk}) {
    for (const auto& [p, q] : {std::pair{Vec2(0.3, 0.2), Vec2(0.6, -0.3)}, std::pair{Vec2(0.5, 0.4), Vec2(0.8, 0.1)}}) {
      const auto sh = distance_shooting(*m, p, q);
      CHECK(sh.method == DistanceMethod::Shooting);
      CHECK(sh.value == Approx(m->analytic_distance(p, q)).epsilon(1e-9));
      CHECK(sh.est_error < 1e-5);
      CHECK(std::abs(m->metric(p).norm(sh.initial_direction) - 1) < 1e-12);
    }
  }
  CHECK(distance_shooting(plane, {0.1, 0.1}, {0.1, 0.1}).value == 0.0);
  CHECK_THROWS_AS(distance(disk, {0, 0}, {1.2, 0}), DomainError);
}

TEST_CASE("shooting flags antipodal targets as cut points") {
  const auto s1 = make("sphere", {1.0});
  // Equator antipodes are joined by two equal-length arcs.
  const auto r = distance_shooting(s1, {pi / 2, 0.0}, {pi / 2, pi});
  CHECK(r.value == Approx(pi).epsilon(1e-9));
  CHECK(r.cut_suspect);
  CHECK(r.candidates >= 2);
}

TEST_CASE("shooting failure carries the best candidate") {
  const auto par = make("paraboloid", {1.0});
  ShootingOptions opt;
  opt.max_newton = 0;
  try {
    distance_shooting(par, {0.1, 0.1}, {0.8, -0.5}, opt);
    FAIL("expected non-convergence");
  } catch (const NumericalError& e) {
    CHECK(e.best_value() > 0.5);
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("graph oracle") {
  const auto plane = make("euclidean_plane");
  CHECK(distance_graph(plane, {0, 0}, {1, 0}, 512).value == Approx(1.0).epsilon(0.01));
  CHECK(distance_graph(plane, {0.2, 0.2}, {0.2, 0.2}, 64).value == 0.0);
  const auto s1 = make("sphere", {1.0});
  const auto g = distance_graph(s1, {pi / 2, 0}, {pi / 2, pi / 2}, 512);
  CHECK(std::abs(g.value - pi / 2) <= 0.02);
  CHECK(g.value >= pi / 2 - 1e-9);  // graph paths are realisable curves
  CHECK(std::abs(g.value - pi / 2) <= g.est_error);

  const auto par = make("paraboloid", {1.0});
  const Vec2 p(0.15, -0.1), q(-0.6, 0.7);
  const double sh = distance(par, p, q).value;
  const double gr = distance_graph(par, p, q, 512).value;
  CHECK(std::abs(gr - sh) / sh <= 0.01);
  CHECK(gr >= sh - 1e-9);

  // Off-stencil direction: within a percent, never below the true value.
  for (int n : {64, 256}) {
    const double est = distance_graph(plane, {0, 0}, {1, 0.37}, n).value;
    const double exact = std::hypot(1.0, 0.37);
    CHECK(est >= exact - 1e-9);
    CHECK((est - exact) / exact <= 0.01);
  }
  CHECK_THROWS_AS(distance_graph(plane, {0, 0}, {1, 0}, 16), DomainError);
}
