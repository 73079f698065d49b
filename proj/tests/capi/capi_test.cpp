// Exercises the shared library through its C header only.

#include <cmath>
#include <cstring>
#include <numbers>

#include "doctest.h"
#include "toponogov.h"

namespace {
constexpr double pi = std::numbers::pi;

double cube(double x, void*) { return x * x * x; }
double wobble(double x, void*) { return std::sin(x); }
}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::strlen(topo_version()) > 0);
  CHECK(std::strcmp(topo_status_name(TOPO_OK), "ok") == 0);
  CHECK(std::strlen(topo_status_name(TOPO_ERR_DOMAIN)) > 0);
}

TEST_CASE("space-form functions") {
  double out = 0;
  REQUIRE(topo_law_of_cosines_side(0, 3, 4, pi / 2, &out) == TOPO_OK);
  CHECK(out == doctest::Approx(5.0));
  REQUIRE(topo_law_of_cosines_angle(0, 4, 3, 5, &out) == TOPO_OK);
  CHECK(out == doctest::Approx(pi / 2));
  CHECK(topo_law_of_cosines_side(1, pi, 0.1, 1, &out) == TOPO_ERR_DOMAIN);
  CHECK(topo_law_of_cosines_side(2, 1, 1, 1, &out) == TOPO_ERR_INVALID_ARG);
  CHECK(std::strlen(topo_last_error()) > 0);
  CHECK(topo_law_of_cosines_side(0, 1, 1, 1, nullptr) == TOPO_ERR_INVALID_ARG);
  REQUIRE(topo_sinh_gap(1, 2, &out) == TOPO_OK);
  CHECK(out == doctest::Approx(std::sinh(2.0) - 2 * std::sinh(1.0)));
  CHECK(topo_h_cosh_over(0.0, &out) == TOPO_ERR_DOMAIN);
}

TEST_CASE("monotonicity callback") {
  topo_monotone_report rep{};
  REQUIRE(topo_check_monotone(cube, nullptr, -1, 1, 101, TOPO_NON_DECREASING, 0, &rep) == TOPO_OK);
  CHECK(rep.pass == 1);
  REQUIRE(topo_check_monotone(wobble, nullptr, 0, pi, 101, TOPO_NON_DECREASING, 0, &rep) == TOPO_OK);
  CHECK(rep.pass == 0);
  CHECK(rep.worst_location > pi / 2);
}

TEST_CASE("surface handles") {
  topo_surface* s = nullptr;
  const double r = 1.0;
  REQUIRE(topo_surface_create("sphere", &r, 1, &s) == TOPO_OK);
  CHECK(std::strncmp(topo_surface_label(s), "sphere", 6) == 0);
  int has = 0, k = 0;
  REQUIRE(topo_surface_curvature_bound(s, &has, &k) == TOPO_OK);
  CHECK(has == 1);
  CHECK(k == 1);
  const double p[2] = {pi / 2, 0}, q[2] = {pi / 2, pi / 2};
  double K = 0;
  REQUIRE(topo_surface_curvature(s, p, &K) == TOPO_OK);
  CHECK(K == doctest::Approx(1.0).epsilon(1e-6));
  topo_distance_result d{};
  REQUIRE(topo_distance(s, p, q, 0, &d) == TOPO_OK);
  CHECK(d.value == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK(d.method == TOPO_DIST_ANALYTIC);
  REQUIRE(topo_distance(s, p, q, 1, &d) == TOPO_OK);
  CHECK(d.value == doctest::Approx(pi / 2).epsilon(1e-9));
  CHECK(d.method == TOPO_DIST_SHOOTING);
  topo_surface_destroy(s);

  CHECK(topo_surface_create("torus", nullptr, 0, &s) != TOPO_OK);
  topo_surface_destroy(nullptr);
}

TEST_CASE("experiment handles") {
  const char* text =
      "surface.name = euclidean_plane\nhinge.vertex = 0, 0\nhinge.dir1_angle = 0\nhinge.dir2_angle = pi/2\n"
      "hinge.b = 1\nmodel.k = 0\ngrid.t_max = 1\ngrid.n = 10\n";
  topo_experiment* e = nullptr;
  REQUIRE(topo_experiment_parse(text, &e) == TOPO_OK);
  int code = -1;
  REQUIRE(topo_experiment_run(e, 2, &code) == TOPO_OK);
  CHECK(code == 0);
  REQUIRE(topo_experiment_series_length(e) == 10);
  double row[5];
  int cut = 1;
  REQUIRE(topo_experiment_series_row(e, 9, row, &cut) == TOPO_OK);
  CHECK(row[0] == doctest::Approx(1.0));
  CHECK(row[1] == doctest::Approx(std::sqrt(2.0)));
  CHECK(cut == 0);
  CHECK(topo_experiment_series_row(e, 10, row, &cut) == TOPO_ERR_INVALID_ARG);
  REQUIRE(topo_experiment_report_count(e) > 0);
  topo_check_report rep{};
  REQUIRE(topo_experiment_report(e, 0, &rep) == TOPO_OK);
  CHECK(rep.pass == 1);
  topo_experiment_destroy(e);

  CHECK(topo_experiment_parse("surface.name = euclidean_plane\nbogus = 1\n", &e) == TOPO_ERR_CONFIG);
  CHECK(std::strstr(topo_last_error(), "bogus") != nullptr);
  const char* hyper =
      "surface.name = euclidean_plane\nhinge.vertex = 0, 0\nhinge.dir1_angle = 0\nhinge.dir2_angle = pi/2\n"
      "hinge.b = 1\nmodel.k = -1\ngrid.t_max = 1\nrun.checks = thm11A\n";
  CHECK(topo_experiment_parse(hyper, &e) == TOPO_ERR_UNSUPPORTED);
}

TEST_CASE("suite listing") {
  CHECK(topo_suite_count() == 6);
  CHECK(topo_suite_name(99) == nullptr);
  int code = 0;
  CHECK(topo_run_suite("nope", 1, nullptr, nullptr, &code) == TOPO_ERR_CONFIG);
}
