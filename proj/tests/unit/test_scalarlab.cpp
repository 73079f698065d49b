#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "oracle.hpp"
#include "topo/errors.hpp"
#include "topo/scalarlab.hpp"

using namespace topo;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("f_one_minus_cos against 50-digit evaluation") {
  CHECK(f_one_minus_cos(1e-9) == Approx(0.5).epsilon(1e-15));
  CHECK(f_one_minus_cos(pi / 2) == Approx(2 / pi).epsilon(1e-15));
  CHECK(f_one_minus_cos(3.0) > f_one_minus_cos(2.0));
  for (double t : {1e-7, 9.9e-5, 1e-4, 1.01e-4, 1e-3, 0.1, 1.0, 2.0, 3.0, pi - 1e-3}) {
    CAPTURE(t);
    CHECK(f_one_minus_cos(t) == Approx(oracle::f(t)).epsilon(1e-13));
  }
}

TEST_CASE("g_cos_over against 50-digit evaluation") {
  CHECK(std::abs(g_cos_over(pi / 2)) < 1e-15);
  CHECK(g_cos_over(0.01) > 9900);
  CHECK(g_cos_over(2.5) < g_cos_over(1.5));
  CHECK(g_cos_over(pi) == -std::numeric_limits<double>::infinity());
  for (double t : {1e-6, 9.9e-5, 1.01e-4, 0.01, 0.5, 1.5, 2.5, 3.0}) {
    CAPTURE(t);
    CHECK(g_cos_over(t) == Approx(oracle::g(t)).epsilon(1e-13));
  }
}

TEST_CASE("h_cosh_over against 50-digit evaluation") {
  CHECK(h_cosh_over(1e-9) == Approx(0.5).epsilon(1e-15));
  CHECK(h_cosh_over(1.0) == Approx(0.4621).epsilon(1e-4));
  CHECK(h_cosh_over(4.0) < h_cosh_over(2.0));
  for (double t : {1e-7, 9.9e-5, 1.01e-4, 0.01, 1.0, 5.0, 30.0}) {
    CAPTURE(t);
    CHECK(h_cosh_over(t) == Approx(oracle::h(t)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(h_cosh_over(0.0), DomainError);
}

TEST_CASE("phi_spherical, sinh_gap and the hyperbolic witness") {
  CHECK(phi_spherical(0.8, 0.8) == Approx(0.0));
  CHECK(phi_spherical(pi / 2, pi) == Approx(pi / 2).epsilon(1e-15));
  CHECK(phi_spherical(0.7, 2.0) > 0.0);
  CHECK(phi_spherical(0.7, 2.0) == Approx(oracle::phi(0.7, 2.0)).epsilon(1e-14));

  CHECK(sinh_gap(1.3, 1.3) == Approx(0.0));
  for (double x : {0.1, 1.0, 3.0}) CHECK(std::abs(sinh_gap(0.0, x)) < 1e-15);
  CHECK(sinh_gap(1, 2) == Approx(std::sinh(2.0) - 2 * std::sinh(1.0)).epsilon(1e-14));
  CHECK(sinh_gap(1, 2) == Approx(1.2765).epsilon(1e-4));
  // Product form 4 sinh(d/2) sinh(r_bar/2) sinh(r/2), d = r_bar - r.
  for (double r : {0.01, 0.5, 2.0}) {
    for (double d : {1e-6, 0.1, 1.5}) {
      const double rb = r + d;
      const double product = 4 * std::sinh(d / 2) * std::sinh(rb / 2) * std::sinh(r / 2);
      CHECK(sinh_gap(r, rb) == Approx(product).epsilon(1e-9));
      CHECK(sinh_gap(r, rb) == Approx(oracle::sinh_gap(r, rb)).epsilon(1e-9));
    }
  }

  CHECK(hyperbolic_ratio_bound_witness(1.1, 1.1) == Approx(0.0));
  CHECK(hyperbolic_ratio_bound_witness(1, 2) < 0.0);
  CHECK(hyperbolic_ratio_bound_witness(0.1, 3) < 0.0);
  CHECK(hyperbolic_ratio_bound_witness(1, 2) == Approx(oracle::h(2) - oracle::h(1)).epsilon(1e-13));
}

TEST_CASE("check_monotone reports") {
  const auto cube = check_monotone([](double x) { return x * x * x; }, -1, 1, 101, Direction::NonDecreasing, 0);
  CHECK(cube.pass);
  CHECK(cube.worst_violation == 0.0);
  CHECK(check_monotone([](double x) { return std::cos(x); }, 0.01, pi - 0.01, 1000, Direction::NonIncreasing, 0).pass);
  CHECK(check_monotone(f_one_minus_cos, 0.01, pi - 0.01, 2000, Direction::NonDecreasing, 1e-12).pass);

  const auto bump = check_monotone([](double x) { return std::sin(x); }, 0, pi, 101, Direction::NonDecreasing, 1e-3);
  CHECK_FALSE(bump.pass);
  CHECK(bump.worst_violation > 0.03);
  CHECK(bump.worst_location > pi / 2);

  const auto nan = check_monotone([](double x) { return x > 0.5 ? std::nan("") : x; }, 0, 1, 11,
                                  Direction::NonDecreasing, 1.0);
  CHECK_FALSE(nan.pass);
  CHECK(std::isinf(nan.worst_violation));
}

TEST_CASE("check_monotone is independent of the thread count") {
  const auto one = check_monotone(g_cos_over, 0.01, 3.0, 5000, Direction::NonIncreasing, 0, 1);
  const auto four = check_monotone(g_cos_over, 0.01, 3.0, 5000, Direction::NonIncreasing, 0, 4);
  CHECK(one.worst_violation == four.worst_violation);
  CHECK(one.worst_location == four.worst_location);
  CHECK(one.pass == four.pass);
}

TEST_CASE("check_monotone names the failing sample") {
  try {
    check_monotone(h_cosh_over, 0.0, 1.0, 11, Direction::NonIncreasing, 0);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("0") != std::string::npos);
  }
}

TEST_CASE("lemma signs hold on dense grids") {
  for (int i = 1; i <= 200; ++i) {
    const double rb = pi * i / 200;
    for (int j = 1; j <= i; ++j) {
      const double r = pi * j / 200;
      CHECK(phi_spherical(r, rb) >= -1e-12);
      CHECK(sinh_gap(r, rb) >= -1e-12);
      if (rb - r >= 0.01) CHECK(hyperbolic_ratio_bound_witness(r, rb) <= -1e-9);
    }
  }
}
