#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracle.hpp"
#include "topo/errors.hpp"
#include "topo/spaceform.hpp"

using namespace topo;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
constexpr CurvatureSign kNeg = CurvatureSign::Negative, kZero = CurvatureSign::Zero, kPos = CurvatureSign::Positive;
}  // namespace

TEST_CASE("law_of_cosines_side reference values") {
  CHECK(law_of_cosines_side(kZero, {3, 4, pi / 2}) == Approx(5.0).epsilon(1e-15));
  for (double x : {0.1, 1.0, 2.0, 3.0}) {
    CHECK(law_of_cosines_side(kPos, {pi / 2, pi / 2, x}) == Approx(x).epsilon(1e-14));
  }
  const double hyp = law_of_cosines_side(kNeg, {1, 0.5, pi / 2});
  CHECK(hyp == Approx(oracle::side(-1, 1, 0.5, pi / 2)).epsilon(1e-15));
  CHECK(hyp == Approx(std::acosh(std::cosh(1.0) * std::cosh(0.5))).epsilon(1e-14));
  CHECK(hyp == Approx(1.1519).epsilon(1e-4));
  for (auto k : {kNeg, kZero, kPos}) CHECK(law_of_cosines_side(k, {2, 1, 0}) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("law_of_cosines_side matches 50-digit evaluation across scales") {
  for (int k : {-1, 0, 1}) {
    for (double a : {1e-6, 1e-3, 0.1, 0.7, 1.4}) {
      for (double b : {2e-6, 5e-3, 0.3, 1.1}) {
        for (double alpha : {1e-5, 0.3, pi / 2, 2.5, pi - 1e-4}) {
          CAPTURE(k);
          CAPTURE(a);
          CAPTURE(b);
          CAPTURE(alpha);
          const double ref = oracle::side(k, a, b, alpha);
          const double got = law_of_cosines_side(curvature_from_int(k), {a, b, alpha});
          CHECK(std::abs(got - ref) <= 1e-14 * ref + 1e-300);
        }
      }
    }
  }
}

TEST_CASE("law_of_cosines_side rejects invalid hinges") {
  CHECK_THROWS_AS(law_of_cosines_side(kZero, {0, 1, 1}), DomainError);
  CHECK_THROWS_AS(law_of_cosines_side(kZero, {1, -1, 1}), DomainError);
  CHECK_THROWS_AS(law_of_cosines_side(kZero, {1, 1, -0.1}), DomainError);
  CHECK_THROWS_AS(law_of_cosines_side(kZero, {1, 1, pi + 0.1}), DomainError);
  CHECK_THROWS_AS(law_of_cosines_side(kPos, {pi, 0.1, 1}), DomainError);
  CHECK_THROWS_AS(law_of_cosines_side(kPos, {2.0, 1.5, 1}), DomainError);
  CHECK_THROWS_AS(curvature_from_int(2), DomainError);
}

TEST_CASE("side length is monotone in curvature and obeys the triangle inequality") {
  for (double a : {0.2, 0.6, 1.0}) {
    for (double b : {0.3, 0.9, 1.3}) {
      for (int i = 0; i <= 20; ++i) {
        const double alpha = pi * i / 20;
        const double cp = law_of_cosines_side(kPos, {a, b, alpha});
        const double c0 = law_of_cosines_side(kZero, {a, b, alpha});
        const double cn = law_of_cosines_side(kNeg, {a, b, alpha});
        CHECK(cp <= c0 + 1e-15);
        CHECK(c0 <= cn + 1e-15);
        for (double c : {cp, c0, cn}) {
          CHECK(c >= std::abs(a - b) - 1e-14);
          CHECK(c <= a + b + 1e-14);
        }
      }
    }
  }
}

TEST_CASE("law_of_cosines_angle reference values and round trip") {
  CHECK(law_of_cosines_angle(kZero, 4, 3, 5) == Approx(pi / 2).epsilon(1e-15));
  CHECK(law_of_cosines_angle(kPos, pi / 2, pi / 2, pi / 2) == Approx(pi / 2).epsilon(1e-15));
  const double c = law_of_cosines_side(kNeg, {1, 0.5, pi / 2});
  CHECK(law_of_cosines_angle(kNeg, 1, 0.5, c) == Approx(pi / 2).epsilon(1e-12));
  for (int k : {-1, 0, 1}) {
    for (double a : {0.3, 0.8, 1.2}) {
      for (double b : {0.4, 1.0}) {
        for (double alpha : {0.4, 1.0, 2.0, 2.8}) {
          const auto s = curvature_from_int(k);
          const double side = law_of_cosines_side(s, {a, b, alpha});
          CHECK(std::abs(law_of_cosines_angle(s, a, b, side) - alpha) <= 1e-10);
          CHECK(std::abs(law_of_cosines_angle(s, a, b, side) - oracle::angle(k, a, b, side)) <= 1e-11);
        }
      }
    }
  }
}

TEST_CASE("model_beta_bar reference values") {
  CHECK(model_beta_bar(kZero, 5, 3, 4) == Approx(pi / 2).epsilon(1e-15));
  CHECK(model_beta_bar(kPos, pi / 2, pi / 2, pi / 2) == Approx(pi / 2).epsilon(1e-15));
  // Hinge with apex angle pi/2 between b = 1 and t = 0.5: the angle at the
  // t end, opposite b, against the 50-digit evaluation.
  const double r = law_of_cosines_side(kNeg, {1, 0.5, pi / 2});
  CHECK(model_beta_bar(kNeg, 1, 0.5, r) == Approx(oracle::angle(-1, 0.5, r, 1)).epsilon(1e-12));
  const double rr = law_of_cosines_side(kNeg, {0.5, 1, pi / 2});
  CHECK(model_beta_bar(kNeg, 0.5, 1, rr) == Approx(oracle::angle(-1, 1, rr, 0.5)).epsilon(1e-12));
}

TEST_CASE("isoceles_beta_bar agrees with the general model angle") {
  CHECK(isoceles_beta_bar(kZero, 1, pi) == Approx(0.0));
  CHECK(isoceles_beta_bar(kZero, 1, pi / 3) == Approx(pi / 3).epsilon(1e-15));
  CHECK(isoceles_beta_bar(kPos, pi / 2, pi / 3) == Approx(pi / 2).epsilon(1e-15));
  for (int k : {-1, 0, 1}) {
    for (double t : {0.05, 0.4, 1.0, 1.5}) {
      for (double alpha : {0.3, pi / 2, 2.5}) {
        const auto s = curvature_from_int(k);
        const double r = law_of_cosines_side(s, {t, t, alpha});
        CHECK(isoceles_beta_bar(s, t, alpha) == Approx(model_beta_bar(s, t, t, r)).epsilon(1e-9));
        CHECK(isoceles_beta_bar(s, t, alpha) == Approx(oracle::angle(k, t, r, t)).epsilon(1e-10));
      }
    }
  }
  CHECK_THROWS_AS(isoceles_beta_bar(kPos, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(isoceles_beta_bar(kZero, 0.0, 1.0), DomainError);
}
