#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "topo/errors.hpp"
#include "topo/experiment.hpp"
#include "topo/suites.hpp"

using namespace topo;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

const char* kFlat = R"(# flat self-model
surface.name = euclidean_plane
hinge.vertex = 0.3, 0.2
hinge.dir1_angle = pi/6
hinge.dir2_angle = 5*pi/6
hinge.b = 1
model.k = 0
grid.t_max = 1
grid.n = 20
)";

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("topo_unit_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string body(const std::string& csv) {
  std::string out, line;
  std::istringstream in(csv);
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out += line + "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("parse_spec fills defaults") {
  const auto s = parse_spec(kFlat);
  CHECK(s.surface_name == "euclidean_plane");
  CHECK(s.mode == RunMode::Hinge);
  CHECK(s.n == 20);
  CHECK(*s.dir2_angle == Approx(5 * pi / 6).epsilon(1e-15));
  CHECK_FALSE(s.checks.empty());
  CHECK(s.key_line.at("hinge.b") == 6);
  CHECK(s.distance == DistanceMode::Auto);
  for (const auto& c : s.checks) {
    CHECK(std::find(known_claims().begin(), known_claims().end(), c) != known_claims().end());
  }
}

TEST_CASE("parse_spec rejects malformed documents") {
  auto expect = [](const std::string& text, const std::string& fragment) {
    try {
      parse_spec(text);
      FAIL("accepted: " << text);
    } catch (const ConfigError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, e.what());
    }
  };
  expect(std::string(kFlat) + "tolerances.tollerance = 1\n", "line 10");
  expect(std::string(kFlat) + "tolerances.tollerance = 1\n", "unknown key");
  expect(std::string(kFlat) + "hinge.b = 2\n", "hinge.b");
  expect(std::string(kFlat) + "grid.n = many\n", "grid.n");
  expect(std::string(kFlat) + "run.checks = thm99\n", "thm99");
  expect(std::string(kFlat) + "this line has no equals\n", "line 10");
  expect("surface.name = euclidean_plane\n", "hinge");
  expect(std::string(kFlat) + "run.checks = cor32_2\n", "corollary.l1");
  expect(std::string(kFlat) + "distance.method = psychic\n", "psychic");
}

TEST_CASE("pi expressions") {
  const auto text = std::string(kFlat) + "hinge.alpha = 2*pi/3\n";
  CHECK(*parse_spec(text).alpha == Approx(2 * pi / 3).epsilon(1e-15));
  std::string t = kFlat;
  t.replace(t.find("hinge.b = 1"), 11, "hinge.b = pi");
  CHECK(*parse_spec(t).b == Approx(pi).epsilon(1e-15));
  t.replace(t.find("hinge.b = pi"), 12, "hinge.b = 0.5*pi");
  CHECK(*parse_spec(t).b == Approx(pi / 2).epsilon(1e-15));
}

TEST_CASE("ratio claim against k = -1 is refused") {
  std::string t = kFlat;
  t.replace(t.find("model.k = 0"), 11, "model.k = -1");
  CHECK_NOTHROW(parse_spec(t));
  const auto bad = t + "run.checks = thm11A\n";
  CHECK_THROWS_AS(parse_spec(bad), UnsupportedCurvature);
  try {
    parse_spec(bad);
  } catch (const UnsupportedCurvature& e) {
    CHECK(std::string(e.what()).find("probe") != std::string::npos);
  }
  const auto out = run_spec_text(bad, "", {});
  CHECK(out.exit_code == 2);
}

TEST_CASE("exit codes") {
  const auto pass = run_spec_text(kFlat, "", {});
  CHECK_MESSAGE(pass.exit_code == 0, pass.message);
  for (const auto& r : pass.reports) CHECK(r.pass);

  // The vertex must sit inside the safe zone of the chart.
  std::string far = kFlat;
  far.replace(far.find("0.3, 0.2"), 8, "7.9, 0.2");
  CHECK(run_spec_text(far, "", {}).exit_code == 2);

  // Shooting round-off exceeds a zero slack.
  const std::string strict = std::string(kFlat) + "distance.method = shooting\nrun.checks = thm11B\n";
  RunOptions zero;
  zero.slack_overrides["thm11B"] = 0.0;
  const auto failed = run_spec_text(strict, "", zero);
  CHECK(failed.exit_code == 1);

  // No Newton iterations: shooting cannot converge.
  const std::string stuck = std::string(kFlat) + "distance.method = shooting\ndistance.max_newton = 0\n";
  const auto num = run_spec_text(stuck, "", {});
  CHECK(num.exit_code == 3);
  CHECK(num.incomplete);
}

TEST_CASE("artifacts carry a digest header and are deterministic") {
  const auto d1 = scratch("a1"), d3 = scratch("a3");
  RunOptions one, three;
  three.threads = 3;
  CHECK(run_spec_text(kFlat, d1.string(), one).exit_code == 0);
  CHECK(run_spec_text(kFlat, d3.string(), three).exit_code == 0);
  for (const char* f : {"series.csv", "summary.csv", "reports.txt"}) {
    CAPTURE(f);
    REQUIRE(fs::exists(d1 / f));
    const auto a = slurp(d1 / f);
    CHECK(a.rfind("# toponogov run digest=fnv1a64:" + digest_hex(kFlat), 0) == 0);
    CHECK(body(a) == body(slurp(d3 / f)));
  }
  const auto series = body(slurp(d1 / "series.csv"));
  CHECK(std::count(series.begin(), series.end(), '\n') == 21);
  fs::remove_all(d1);
  fs::remove_all(d3);
}

TEST_CASE("incomplete runs are marked in the artifacts") {
  const auto d = scratch("inc");
  const std::string stuck = std::string(kFlat) + "distance.method = shooting\ndistance.max_newton = 0\n";
  CHECK(run_spec_text(stuck, d.string(), {}).exit_code == 3);
  CHECK(slurp(d / "summary.csv").find("# INCOMPLETE") != std::string::npos);
  fs::remove_all(d);
}

TEST_CASE("probe runs are marked exploratory") {
  const std::string text = R"(surface.name = sphere
surface.params = 0.5
hinge.vertex = pi/2, 0
hinge.dir1_angle = pi/4
hinge.dir2_angle = 3*pi/4
hinge.b = pi/4
model.k = 1
grid.t_max = pi/2
run.mode = probe
)";
  const auto d = scratch("probe");
  const auto out = run_spec_text(text, d.string(), {});
  CHECK(out.exit_code == 0);
  CHECK(out.exploratory);
  const auto summary = slurp(d / "summary.csv");
  CHECK(summary.find("# EXPLORATORY") != std::string::npos);
  CHECK(summary.find("probe_ratio,exploratory") != std::string::npos);
  CHECK(parse_spec(text).checks.empty());
  CHECK_THROWS_AS(parse_spec(text + "run.checks = toponogov\n"), ConfigError);
  fs::remove_all(d);
}

TEST_CASE("format_number and digest_hex") {
  for (double x : {0.1, pi, 1e-300, -2.5e17, 1.0 / 3.0}) CHECK(std::stod(format_number(x)) == x);
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(digest_hex("") == "cbf29ce484222325");
  CHECK(digest_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("write_funcs tabulates the scalar functions") {
  const auto d = scratch("funcs");
  write_funcs(d.string(), 50);
  const auto text = body(slurp(d / "funcs.csv"));
  CHECK(text.rfind("t,f_one_minus_cos,g_cos_over,h_cosh_over\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 51);
  fs::remove_all(d);
}

TEST_CASE("suite mapping") {
  CHECK(suite_names().size() == 6);
  CHECK(suite_criteria("selfmodel") == std::vector<int>{1});
  CHECK(suite_criteria("theorem11") == std::vector<int>{2, 3, 7, 8});
  CHECK(suite_criteria("oracles") == std::vector<int>{9, 10});
  std::vector<int> all;
  for (const auto& n : suite_names()) {
    for (int id : suite_criteria(n)) all.push_back(id);
  }
  std::sort(all.begin(), all.end());
  CHECK(all == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  CHECK_THROWS_AS(suite_criteria("everything"), ConfigError);
}
