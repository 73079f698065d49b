#include "topo/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/LU>

#include "topo/errors.hpp"

namespace topo {

namespace {

std::string where(const Vec2& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p.x() << ", " << p.y() << ")";
  return os.str();
}

// Metric coefficients with their first and second partial derivatives.
struct MetricJet {
  Metric g;
  Metric du, dv, duu, dvv, duv;
};

MetricJet metric_jet(const MetricSurface& m, const Vec2& p, double h) {
  auto at = [&](double du, double dv) { return m.metric(p + Vec2(du * h, dv * h)); };
  const Metric c = at(0, 0);
  const Metric e = at(1, 0), w = at(-1, 0), n = at(0, 1), s = at(0, -1);
  const Metric ne = at(1, 1), nw = at(-1, 1), se = at(1, -1), sw = at(-1, -1);
  auto combine = [](auto f) {
    return Metric{f(&Metric::E), f(&Metric::F), f(&Metric::G)};
  };
  MetricJet j;
  j.g = c;
  j.du = combine([&](double Metric::*x) { return (e.*x - w.*x) / (2 * h); });
  j.dv = combine([&](double Metric::*x) { return (n.*x - s.*x) / (2 * h); });
  j.duu = combine([&](double Metric::*x) { return (e.*x - 2 * c.*x + w.*x) / (h * h); });
  j.dvv = combine([&](double Metric::*x) { return (n.*x - 2 * c.*x + s.*x) / (h * h); });
  j.duv = combine([&](double Metric::*x) { return (ne.*x - nw.*x - se.*x + sw.*x) / (4 * h * h); });
  return j;
}

Christoffel christoffel_from_derivatives(const Metric& g, const Metric& du, const Metric& dv) {
  const double E = g.E, F = g.F, G = g.G;
  const double two_w = 2.0 * g.det();
  Christoffel c;
  c.symbols[0][0][0] = (G * du.E - 2 * F * du.F + F * dv.E) / two_w;
  c.symbols[1][0][0] = (2 * E * du.F - E * dv.E - F * du.E) / two_w;
  c.symbols[0][0][1] = c.symbols[0][1][0] = (G * dv.E - F * du.G) / two_w;
  c.symbols[1][0][1] = c.symbols[1][1][0] = (E * du.G - F * dv.E) / two_w;
  c.symbols[0][1][1] = (2 * G * dv.F - G * du.G - F * dv.G) / two_w;
  c.symbols[1][1][1] = (E * dv.G - 2 * F * dv.F + F * du.G) / two_w;
  return c;
}

// Symbols without the boundary-margin check; integration stops on its own
// when it leaves the chart.
Christoffel symbols_at(const MetricSurface& m, const Vec2& p) {
  if (m.has_analytic_christoffel()) return m.analytic_christoffel(p);
  return christoffel_fd(m, p);
}

double interior_margin(const MetricSurface& m) {
  return m.has_analytic_christoffel() ? 0.0 : 2.0 * kChristoffelStep;
}

struct State {
  Vec2 x;
  Vec2 v;
};

State rk4_step(const MetricSurface& m, const State& y, double h) {
  auto rhs = [&](const State& s) { return State{s.v, symbols_at(m, s.x).acceleration(s.v)}; };
  const State k1 = rhs(y);
  const State k2 = rhs({y.x + 0.5 * h * k1.x, y.v + 0.5 * h * k1.v});
  const State k3 = rhs({y.x + 0.5 * h * k2.x, y.v + 0.5 * h * k2.v});
  const State k4 = rhs({y.x + h * k3.x, y.v + h * k3.v});
  return {y.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          y.v + h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};
}

void check_step_args(double length, double step) {
  if (!(length >= 0.0) || !std::isfinite(length)) throw DomainError("geodesic length must be non-negative");
  if (!(step > 0.0)) throw DomainError("geodesic step must be positive");
}

template <typename Visit>
bool integrate(const MetricSurface& m, const Vec2& p, const Vec2& v, double length, double step,
               Visit&& visit) {
  const long n = std::max(1L, static_cast<long>(std::ceil(length / step - 1e-9)));
  const double h = length / static_cast<double>(n);
  const double margin = interior_margin(m);
  State y{p, v};
  for (long i = 1; i <= n; ++i) {
    const State next = rk4_step(m, y, h);
    if (!m.domain().contains(next.x, margin) || !next.v.allFinite()) return true;
    y = next;
    visit(h * static_cast<double>(i), y.x, y.v);
  }
  return false;
}

}  // namespace

Christoffel christoffel_fd(const MetricSurface& m, const Vec2& p, double h) {
  const Metric g = m.metric(p);
  auto at = [&](double du, double dv) { return m.metric(p + Vec2(du * h, dv * h)); };
  const Metric e = at(1, 0), w = at(-1, 0), n = at(0, 1), s = at(0, -1);
  const Metric du{(e.E - w.E) / (2 * h), (e.F - w.F) / (2 * h), (e.G - w.G) / (2 * h)};
  const Metric dv{(n.E - s.E) / (2 * h), (n.F - s.F) / (2 * h), (n.G - s.G) / (2 * h)};
  return christoffel_from_derivatives(g, du, dv);
}

Christoffel christoffel(const MetricSurface& m, const Vec2& p) {
  if (!m.domain().contains(p, 2.0 * kChristoffelStep)) {
    throw DomainError("christoffel: point " + where(p) + " outside the chart interior of " + m.label());
  }
  return symbols_at(m, p);
}

double gaussian_curvature(const MetricSurface& m, const Vec2& p) {
  const double h = kCurvatureStep;
  if (!m.domain().contains(p, 2.0 * h)) {
    throw DomainError("gaussian_curvature: point " + where(p) + " outside the chart interior of " + m.label());
  }
  const MetricJet j = metric_jet(m, p, h);
  const double E = j.g.E, F = j.g.F, G = j.g.G;
  const double W = j.g.det();
  if (W < 1e-12) throw DomainError("gaussian_curvature: near-degenerate metric at " + where(p));

  if (m.orthogonal()) {
    const double EG = E * G, root = std::sqrt(EG);
    const double EG_u = j.du.E * G + E * j.du.G;
    const double EG_v = j.dv.E * G + E * j.dv.G;
    const double a = j.duu.G / root - j.du.G * EG_u / (2.0 * EG * root);
    const double b = j.dvv.E / root - j.dv.E * EG_v / (2.0 * EG * root);
    return -(a + b) / (2.0 * root);
  }

  Eigen::Matrix3d A;
  A << -0.5 * j.dvv.E + j.duv.F - 0.5 * j.duu.G, 0.5 * j.du.E, j.du.F - 0.5 * j.dv.E,
      j.dv.F - 0.5 * j.du.G, E, F,
      0.5 * j.dv.G, F, G;
  Eigen::Matrix3d B;
  B << 0.0, 0.5 * j.dv.E, 0.5 * j.du.G,
      0.5 * j.dv.E, E, F,
      0.5 * j.du.G, F, G;
  return (A.determinant() - B.determinant()) / (W * W);
}

Vec2 frame_direction(const MetricSurface& m, const Vec2& p, double theta) {
  const Metric g = m.metric(p);
  const double se = std::sqrt(g.E);
  const Vec2 e1(1.0 / se, 0.0);
  const Vec2 e2 = Vec2(-g.F / g.E, 1.0) / std::sqrt(g.det() / g.E);
  return std::cos(theta) * e1 + std::sin(theta) * e2;
}

Vec2 normalize(const MetricSurface& m, const Vec2& p, const Vec2& v) {
  const double n = m.metric(p).norm(v);
  if (!(n > 0.0)) throw DomainError("cannot normalise a zero tangent vector");
  return v / n;
}

double angle_between(const MetricSurface& m, const Vec2& p, const Vec2& u, const Vec2& v) {
  const Metric g = m.metric(p);
  const double nu = g.norm(u), nv = g.norm(v);
  if (!(nu > 0.0) || !(nv > 0.0)) throw DomainError("angle_between: zero tangent vector");
  // atan2 of (|u x v|_g, <u, v>_g) stays accurate near 0 and pi.
  const double cross = std::sqrt(g.det()) * std::abs(u.x() * v.y() - u.y() * v.x());
  return std::atan2(cross / (nu * nv), g.inner(u, v) / (nu * nv));
}

GeodesicPath integrate_geodesic(const MetricSurface& m, const Vec2& p, const Vec2& dir,
                                double length, double step) {
  check_step_args(length, step);
  if (!m.domain().contains(p, interior_margin(m))) {
    throw DomainError("integrate_geodesic: start " + where(p) + " outside the chart of " + m.label());
  }
  const double speed = m.metric(p).norm(dir);
  if (std::abs(speed - 1.0) > 1e-9) {
    std::ostringstream os;
    os.precision(17);
    os << "integrate_geodesic: direction has metric norm " << speed << ", expected 1";
    throw DomainError(os.str());
  }
  GeodesicPath path;
  const long n = std::max(1L, static_cast<long>(std::ceil(length / step - 1e-9)));
  path.step = length / static_cast<double>(n);
  path.samples.reserve(static_cast<std::size_t>(n) + 1);
  path.samples.push_back({0.0, p, dir});
  if (length == 0.0) return path;
  path.truncated = integrate(m, p, dir, length, step, [&](double s, const Vec2& x, const Vec2& v) {
    path.samples.push_back({s, x, v});
  });
  return path;
}

GeodesicEnd shoot(const MetricSurface& m, const Vec2& p, const Vec2& velocity, double length,
                  double step) {
  check_step_args(length, step);
  GeodesicEnd end{p, velocity, false};
  if (length == 0.0) return end;
  end.truncated = integrate(m, p, velocity, length, step, [&](double, const Vec2& x, const Vec2& v) {
    end.position = x;
    end.tangent = v;
  });
  return end;
}

Vec2 exp_map(const MetricSurface& m, const Vec2& p, const Vec2& v, double step) {
  const double len = m.metric(p).norm(v);
  if (len == 0.0) return p;
  const GeodesicEnd end = shoot(m, p, v / len, len, step);
  if (end.truncated) throw DomainError("exp_map: geodesic from " + where(p) + " leaves the chart of " + m.label());
  return end.position;
}

}  // namespace topo
