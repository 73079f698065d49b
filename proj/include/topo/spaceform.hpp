#pragma once

// Closed-form trigonometry of the simply connected space forms of curvature
// k in {-1, 0, +1}: the plane, the unit sphere and the hyperbolic plane.
//
// Angle convention: law_of_cosines_angle returns the angle at the vertex
// where sides `a` and `adjacent` meet, i.e. the angle opposite `opposite`.
// For a hinge with apex O, far endpoint P on the first side (|OP| = b) and a
// point Q at distance t along the second side, model_beta_bar is the angle at
// Q between the sides of length t and r_bar = |PQ|.

#include <string_view>

namespace topo {

enum class CurvatureSign : int { Negative = -1, Zero = 0, Positive = 1 };

// Throws DomainError for any integer other than -1, 0, 1.
CurvatureSign curvature_from_int(int k);
constexpr int to_int(CurvatureSign k) { return static_cast<int>(k); }
std::string_view to_string(CurvatureSign k);

// Side-angle-side data. Lengths are radians for k = +/-1.
struct TriangleSAS {
  double a = 0.0;
  double b = 0.0;
  double alpha = 0.0;
};

// Tolerance collar applied to inverse-cosine arguments before clamping.
inline constexpr double kCosineCollar = 1e-9;

// Length of the side opposite `alpha`. Rejects a, b <= 0, alpha outside
// [0, pi], and for k = +1 any side >= pi or a + b > pi (non-minimal sides).
double law_of_cosines_side(CurvatureSign k, const TriangleSAS& tri);

// Angle between sides `a` and `adjacent`, opposite `opposite`.
double law_of_cosines_angle(CurvatureSign k, double a, double adjacent, double opposite);

// Angle at gamma_2(t) in the comparison hinge; cos of the result is the
// plain law-of-cosines quotient (r_bar^2 + t^2 - b^2) / (2 r_bar t) and its
// spherical/hyperbolic analogues.
double model_beta_bar(CurvatureSign k, double b, double t, double r_bar);

// Base angle of the isoceles comparison hinge with legs t and apex angle
// alpha, evaluated from the start-point-free quotients.
double isoceles_beta_bar(CurvatureSign k, double t, double alpha);

}  // namespace topo
