#include "topo/spaceform.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "topo/errors.hpp"

namespace topo {

namespace {

constexpr double kPi = std::numbers::pi;

double acos_collared(double c, const char* what) {
  if (!std::isfinite(c) || c < -1.0 - kCosineCollar || c > 1.0 + kCosineCollar) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": cosine " << c << " outside [-1, 1] (inconsistent triangle)";
    throw DomainError(os.str());
  }
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return std::acos(c);
}

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << name << " must be a positive finite length, got " << x;
    throw DomainError(os.str());
  }
}

void require_angle(double alpha) {
  if (!(alpha >= 0.0 && alpha <= kPi)) {
    std::ostringstream os;
    os.precision(17);
    os << "angle " << alpha << " outside [0, pi]";
    throw DomainError(os.str());
  }
}

void require_spherical_side(double x, const char* name) {
  if (x >= kPi) {
    std::ostringstream os;
    os.precision(17);
    os << name << " = " << x << " is not shorter than pi on the unit sphere";
    throw DomainError(os.str());
  }
}

}  // namespace

CurvatureSign curvature_from_int(int k) {
  switch (k) {
    case -1: return CurvatureSign::Negative;
    case 0: return CurvatureSign::Zero;
    case 1: return CurvatureSign::Positive;
    default: throw DomainError("curvature sign must be -1, 0 or 1, got " + std::to_string(k));
  }
}

std::string_view to_string(CurvatureSign k) {
  switch (k) {
    case CurvatureSign::Negative: return "-1";
    case CurvatureSign::Zero: return "0";
    case CurvatureSign::Positive: return "1";
  }
  return "?";
}

// Half-angle forms: each law is rewritten as
//   hav(c) = hav(a - b) + w(a, b) * hav(alpha)
// with the flat, spherical or hyperbolic "haversine". This keeps short
// sides and small angles free of cancellation.
double law_of_cosines_side(CurvatureSign k, const TriangleSAS& tri) {
  require_positive(tri.a, "side a");
  require_positive(tri.b, "side b");
  require_angle(tri.alpha);
  const double s = std::sin(0.5 * tri.alpha);
  const double s2 = s * s;
  const double d = tri.a - tri.b;
  switch (k) {
    case CurvatureSign::Zero:
      return std::sqrt(d * d + 4.0 * tri.a * tri.b * s2);
    case CurvatureSign::Positive: {
      require_spherical_side(tri.a, "side a");
      require_spherical_side(tri.b, "side b");
      if (tri.a + tri.b > kPi) {
        std::ostringstream os;
        os.precision(17);
        os << "spherical sides a + b = " << tri.a + tri.b << " exceed pi";
        throw DomainError(os.str());
      }
      const double hd = std::sin(0.5 * d);
      double h = hd * hd + std::sin(tri.a) * std::sin(tri.b) * s2;
      if (h > 1.0) h = 1.0;
      return 2.0 * std::atan2(std::sqrt(h), std::sqrt(1.0 - h));
    }
    case CurvatureSign::Negative: {
      const double hd = std::sinh(0.5 * d);
      const double h = hd * hd + std::sinh(tri.a) * std::sinh(tri.b) * s2;
      return 2.0 * std::asinh(std::sqrt(h));
    }
  }
  throw DomainError("invalid curvature sign");
}

double law_of_cosines_angle(CurvatureSign k, double a, double adjacent, double opposite) {
  require_positive(a, "side a");
  require_positive(adjacent, "adjacent side");
  if (!(opposite >= 0.0) || !std::isfinite(opposite)) {
    throw DomainError("opposite side must be a non-negative finite length");
  }
  double c = 0.0;
  switch (k) {
    case CurvatureSign::Zero:
      c = (a * a + adjacent * adjacent - opposite * opposite) / (2.0 * a * adjacent);
      break;
    case CurvatureSign::Positive:
      require_spherical_side(a, "side a");
      require_spherical_side(adjacent, "adjacent side");
      require_spherical_side(opposite, "opposite side");
      c = (std::cos(opposite) - std::cos(a) * std::cos(adjacent)) /
          (std::sin(a) * std::sin(adjacent));
      break;
    case CurvatureSign::Negative:
      c = (std::cosh(a) * std::cosh(adjacent) - std::cosh(opposite)) /
          (std::sinh(a) * std::sinh(adjacent));
      break;
  }
  return acos_collared(c, "law_of_cosines_angle");
}

double model_beta_bar(CurvatureSign k, double b, double t, double r_bar) {
  return law_of_cosines_angle(k, r_bar, t, b);
}

double isoceles_beta_bar(CurvatureSign k, double t, double alpha) {
  if (!(t > 0.0)) throw DomainError("isoceles hinge needs t > 0");
  if (!(alpha > 0.0)) throw DomainError("isoceles hinge needs alpha > 0");
  if (k == CurvatureSign::Positive && t > 0.5 * kPi + 1e-12) {
    throw DomainError("isoceles spherical hinge needs t <= pi/2");
  }
  const double r = law_of_cosines_side(k, {t, t, alpha});
  double c = 0.0;
  switch (k) {
    case CurvatureSign::Zero:
      c = r / (2.0 * t);
      break;
    case CurvatureSign::Positive: {
      const double sr = std::sin(r);
      if (sr <= 0.0) throw DomainError("isoceles spherical hinge degenerates to antipodal base");
      c = std::cos(t) * (1.0 - std::cos(r)) / (sr * std::sin(t));
      break;
    }
    case CurvatureSign::Negative:
      c = (std::cosh(r) - 1.0) * std::cosh(t) / (std::sinh(r) * std::sinh(t));
      break;
  }
  return acos_collared(c, "isoceles_beta_bar");
}

}  // namespace topo
