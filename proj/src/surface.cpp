#include "topo/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Geometry>

#include "topo/errors.hpp"

namespace topo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void require_param_count(std::string_view name, std::span<const double> params, std::size_t n) {
  if (params.size() != n) {
    throw DomainError(std::string(name) + " expects " + std::to_string(n) + " parameter(s), got " +
                      std::to_string(params.size()));
  }
}

MetricSurface make_plane() {
  MetricSurface::Parts p;
  p.name = "euclidean_plane";
  p.domain = ChartRegion::rectangle(-10, 10, -10, 10);
  p.safe = {ChartRegion::rectangle(-8, 8, -8, 8), 8.0};
  p.metric = [](const Vec2&) { return Metric{1.0, 0.0, 1.0}; };
  p.christoffel = [](const Vec2&) { return Christoffel{}; };
  p.distance = [](const Vec2& a, const Vec2& b) { return (a - b).norm(); };
  p.curvature_bound = CurvatureSign::Zero;
  p.orthogonal = true;
  return MetricSurface(std::move(p));
}

// (theta, phi) chart, theta the colatitude.
MetricSurface make_sphere(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("sphere radius must be positive, got " + fmt(R));
  MetricSurface::Parts p;
  p.name = "sphere";
  p.params = {R};
  p.domain = ChartRegion::rectangle(0.05, kPi - 0.05, -4 * kPi, 4 * kPi);
  p.safe = {ChartRegion::rectangle(0.2, kPi - 0.2, -3 * kPi, 3 * kPi), kPi * R};
  p.metric = [R](const Vec2& x) {
    const double s = std::sin(x.x());
    return Metric{R * R, 0.0, R * R * s * s};
  };
  p.christoffel = [](const Vec2& x) {
    Christoffel c;
    const double s = std::sin(x.x()), co = std::cos(x.x());
    c.symbols[0][1][1] = -s * co;
    c.symbols[1][0][1] = co / s;
    c.symbols[1][1][0] = co / s;
    return c;
  };
  p.distance = [R](const Vec2& a, const Vec2& b) {
    const Eigen::Vector3d x(std::sin(a.x()) * std::cos(a.y()), std::sin(a.x()) * std::sin(a.y()),
                            std::cos(a.x()));
    const Eigen::Vector3d y(std::sin(b.x()) * std::cos(b.y()), std::sin(b.x()) * std::sin(b.y()),
                            std::cos(b.x()));
    return R * std::atan2(x.cross(y).norm(), x.dot(y));
  };
  // K = 1/R^2 >= 1 iff R <= 1.
  p.curvature_bound = R <= 1.0 ? CurvatureSign::Positive : CurvatureSign::Zero;
  p.orthogonal = true;
  return MetricSurface(std::move(p));
}

// Poincare disk, metric 4 |dx|^2 / (1 - |x|^2)^2, K = -1.
MetricSurface make_hyperbolic_disk() {
  MetricSurface::Parts p;
  p.name = "hyperbolic_disk";
  p.domain = ChartRegion::disk(0.995);
  p.safe = {ChartRegion::disk(0.95), kInf};
  p.metric = [](const Vec2& x) {
    const double w = 1.0 - x.squaredNorm();
    const double e = 4.0 / (w * w);
    return Metric{e, 0.0, e};
  };
  // Conformal factor exp(2 w), w = log 2 - log(1 - |x|^2).
  p.christoffel = [](const Vec2& x) {
    const double d = 1.0 - x.squaredNorm();
    const double wu = 2.0 * x.x() / d, wv = 2.0 * x.y() / d;
    Christoffel c;
    c.symbols[0][0][0] = wu;
    c.symbols[1][0][0] = -wv;
    c.symbols[0][0][1] = c.symbols[0][1][0] = wv;
    c.symbols[1][0][1] = c.symbols[1][1][0] = wu;
    c.symbols[0][1][1] = -wu;
    c.symbols[1][1][1] = wv;
    return c;
  };
  p.distance = [](const Vec2& a, const Vec2& b) {
    const double num = (a - b).norm();
    const double den = std::sqrt((1.0 - a.squaredNorm()) * (1.0 - b.squaredNorm()));
    return 2.0 * std::asinh(num / den);
  };
  p.curvature_bound = CurvatureSign::Negative;
  p.orthogonal = true;
  return MetricSurface(std::move(p));
}

// Graph of z = c (x^2 + y^2).
MetricSurface make_paraboloid(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("paraboloid parameter must be positive, got " + fmt(c));
  MetricSurface::Parts p;
  p.name = "paraboloid";
  p.params = {c};
  const double a = 4.0 / c, s = 3.0 / c;
  p.domain = ChartRegion::rectangle(-a, a, -a, a);
  p.safe = {ChartRegion::rectangle(-s, s, -s, s), 2.0 / c};
  p.metric = [c](const Vec2& x) {
    const double fu = 2.0 * c * x.x(), fv = 2.0 * c * x.y();
    return Metric{1.0 + fu * fu, fu * fv, 1.0 + fv * fv};
  };
  // For a graph z = f: Gamma^k_ij = f_k f_ij / (1 + |grad f|^2).
  p.christoffel = [c](const Vec2& x) {
    const double fu = 2.0 * c * x.x(), fv = 2.0 * c * x.y();
    const double w = 1.0 + fu * fu + fv * fv;
    Christoffel g;
    g.symbols[0][0][0] = g.symbols[0][1][1] = fu * 2.0 * c / w;
    g.symbols[1][0][0] = g.symbols[1][1][1] = fv * 2.0 * c / w;
    return g;
  };
  p.curvature_bound = CurvatureSign::Zero;
  return MetricSurface(std::move(p));
}

// Surface of revolution in geodesic polar form: (s, phi) with meridian arc
// length s and parallel radius f(s) given by polynomial coefficients.
MetricSurface make_revolution(std::span<const double> params) {
  if (params.size() < 3) {
    throw DomainError("revolution expects (s_lo, s_hi, c0, c1, ...) with at least one coefficient");
  }
  const double lo = params[0], hi = params[1];
  if (!(lo < hi)) throw DomainError("revolution needs s_lo < s_hi");
  // Coefficients of f, f' and f''.
  std::array<std::vector<double>, 3> coef;
  coef[0].assign(params.begin() + 2, params.end());
  for (int d = 1; d < 3; ++d) {
    for (std::size_t i = 1; i < coef[d - 1].size(); ++i) {
      coef[d].push_back(coef[d - 1][i] * static_cast<double>(i));
    }
  }
  auto eval = [coef](double s, int deriv) {
    double v = 0.0;
    const auto& c = coef[static_cast<std::size_t>(deriv)];
    for (std::size_t i = c.size(); i-- > 0;) v = v * s + c[i];
    return v;
  };
  constexpr int kSamples = 257;
  double k_min = kInf;
  for (int i = 0; i < kSamples; ++i) {
    const double s = lo + (hi - lo) * i / (kSamples - 1);
    const double f = eval(s, 0);
    if (!(f > 0.0)) throw DomainError("revolution profile must be positive on [s_lo, s_hi], f(" + fmt(s) + ") = " + fmt(f));
    k_min = std::min(k_min, -eval(s, 2) / f);
  }

  MetricSurface::Parts p;
  p.name = "revolution";
  p.params.assign(params.begin(), params.end());
  const double inset = 0.1 * (hi - lo);
  p.domain = ChartRegion::rectangle(lo, hi, -4 * kPi, 4 * kPi);
  p.safe = {ChartRegion::rectangle(lo + inset, hi - inset, -3 * kPi, 3 * kPi), 0.5 * (hi - lo)};
  p.metric = [eval](const Vec2& x) {
    const double f = eval(x.x(), 0);
    return Metric{1.0, 0.0, f * f};
  };
  p.christoffel = [eval](const Vec2& x) {
    const double f = eval(x.x(), 0), df = eval(x.x(), 1);
    Christoffel c;
    c.symbols[0][1][1] = -f * df;
    c.symbols[1][0][1] = c.symbols[1][1][0] = df / f;
    return c;
  };
  // K = -f''/f; declare the largest admissible model curvature.
  if (k_min >= 1.0) {
    p.curvature_bound = CurvatureSign::Positive;
  } else if (k_min >= 0.0) {
    p.curvature_bound = CurvatureSign::Zero;
  } else if (k_min >= -1.0) {
    p.curvature_bound = CurvatureSign::Negative;
  }
  p.orthogonal = true;
  return MetricSurface(std::move(p));
}

}  // namespace

double Metric::norm(const Vec2& a) const { return std::sqrt(inner(a, a)); }

Vec2 Christoffel::acceleration(const Vec2& v) const {
  Vec2 out;
  for (int k = 0; k < 2; ++k) {
    out[k] = -(symbols[k][0][0] * v[0] * v[0] + 2.0 * symbols[k][0][1] * v[0] * v[1] +
               symbols[k][1][1] * v[1] * v[1]);
  }
  return out;
}

ChartRegion ChartRegion::rectangle(double u_lo, double u_hi, double v_lo, double v_hi) {
  if (!(u_lo < u_hi && v_lo < v_hi)) throw DomainError("empty chart rectangle");
  ChartRegion r;
  r.box_ = {u_lo, u_hi, v_lo, v_hi};
  return r;
}

ChartRegion ChartRegion::disk(double radius) {
  if (!(radius > 0.0)) throw DomainError("chart disk radius must be positive");
  ChartRegion r;
  r.disk_ = true;
  r.radius_ = radius;
  r.box_ = {-radius, radius, -radius, radius};
  return r;
}

bool ChartRegion::contains(const Vec2& p, double margin) const {
  if (!p.allFinite()) return false;
  if (disk_) return p.norm() <= radius_ - margin;
  return p.x() >= box_[0] + margin && p.x() <= box_[1] - margin && p.y() >= box_[2] + margin &&
         p.y() <= box_[3] - margin;
}

MetricSurface::MetricSurface(Parts parts) : p_(std::move(parts)) {
  if (!p_.metric) throw DomainError("surface " + p_.name + " has no metric");
  const auto b = p_.domain.bounds();
  constexpr int n = 17;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec2 x(b[0] + (b[1] - b[0]) * i / (n - 1), b[2] + (b[3] - b[2]) * j / (n - 1));
      if (!p_.domain.contains(x)) continue;
      const Metric g = p_.metric(x);
      if (!(g.E > 0.0 && g.G > 0.0 && g.det() > 0.0)) {
        throw DomainError("surface " + p_.name + " metric is not positive definite at (" + fmt(x.x()) +
                          ", " + fmt(x.y()) + ")");
      }
    }
  }
}

std::string MetricSurface::label() const {
  std::string s = p_.name + "(";
  for (std::size_t i = 0; i < p_.params.size(); ++i) {
    if (i) s += ",";
    s += fmt(p_.params[i]);
  }
  return s + ")";
}

MetricSurface builtin_surface(std::string_view name, std::span<const double> params) {
  if (name == "euclidean_plane") {
    require_param_count(name, params, 0);
    return make_plane();
  }
  if (name == "sphere") {
    require_param_count(name, params, 1);
    return make_sphere(params[0]);
  }
  if (name == "hyperbolic_disk") {
    require_param_count(name, params, 0);
    return make_hyperbolic_disk();
  }
  if (name == "paraboloid") {
    require_param_count(name, params, 1);
    return make_paraboloid(params[0]);
  }
  if (name == "revolution") return make_revolution(params);
  throw DomainError("unknown surface '" + std::string(name) + "'");
}

std::vector<std::string> builtin_surface_names() {
  return {"euclidean_plane", "sphere", "hyperbolic_disk", "paraboloid", "revolution"};
}

}  // namespace topo
