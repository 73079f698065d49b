#include "topo/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "topo/comparison.hpp"
#include "topo/errors.hpp"
#include "topo/experiment.hpp"
#include "topo/scalarlab.hpp"

namespace topo {

namespace {

constexpr double kPi = std::numbers::pi;
const std::vector<double> kAlphas{kPi / 6, kPi / 2, 2 * kPi / 3, 5 * kPi / 6};
const std::vector<double> kFlatB{0.4, 0.8, 1.2};
const std::vector<double> kSphereB{kPi / 4, kPi / 2};
constexpr double kTMin = 0.05;

using SurfacePtr = std::shared_ptr<const MetricSurface>;

SurfacePtr surface(std::string_view name, std::vector<double> params = {}) {
  return std::make_shared<const MetricSurface>(builtin_surface(name, params));
}

const Vec2 kPlaneVertex(0.3, 0.2);
const Vec2 kEquator(kPi / 2, 0.0);
const Vec2 kParaboloidVertex(0.15, -0.1);
const Vec2 kDiskVertex(0.1, -0.05);

// Directions symmetric about the second frame axis.
HingeConfig hinge(const SurfacePtr& s, const Vec2& v, double alpha, double b, CurvatureSign k, double t_max,
                  int n, int threads) {
  HingeConfig cfg = make_hinge(s, v, kPi / 2 - alpha / 2, kPi / 2 + alpha / 2, b, k, uniform_grid(kTMin, t_max, n));
  cfg.threads = threads;
  return cfg;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

std::string run_label(const HingeConfig& c) {
  return c.surface->label() + " k=" + std::string(to_string(c.k)) + " alpha=" + fmt(c.alpha) + " b=" + fmt(c.b);
}

// Collects pass/fail over many runs; `worst` tracks the most adverse margin.
struct Tally {
  bool pass = true;
  double worst = -std::numeric_limits<double>::infinity();
  int runs = 0;
  std::string first_failure;

  void add(bool ok, double margin, const std::string& what) {
    ++runs;
    worst = std::max(worst, margin);
    if (!ok && pass) {
      pass = false;
      first_failure = what;
    }
  }
  void add(const CheckReport& r, const std::string& what) {
    add(r.pass, r.worst_margin - r.slack, what + " " + r.claim + " margin " + fmt(r.worst_margin) + (r.note.empty() ? "" : " (" + r.note + ")"));
  }
};

CriterionResult finish(CriterionResult r, const Tally& t, const std::string& summary) {
  r.checks_pass = t.pass;
  r.worst = t.worst;
  r.detail = std::to_string(t.runs) + " checks; " + summary;
  if (!t.pass) r.detail += "; first failure: " + t.first_failure;
  return r;
}

double max_adjacent_change(const std::vector<double>& v) {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double d = std::abs(v[i + 1] - v[i]);
    m = std::max(m, std::isnan(d) ? std::numeric_limits<double>::infinity() : d);
  }
  return m;
}

CriterionResult self_model(CriterionResult r, int threads) {
  Tally t;
  double gap = 0.0, dratio = 0.0, dpsi = 0.0;
  struct Case {
    SurfacePtr s;
    Vec2 v;
    CurvatureSign k;
  };
  const std::vector<Case> cases{{surface("euclidean_plane"), kPlaneVertex, CurvatureSign::Zero},
                                {surface("sphere", {1.0}), kEquator, CurvatureSign::Positive},
                                {surface("hyperbolic_disk"), kDiskVertex, CurvatureSign::Negative}};
  for (const auto& c : cases) {
    for (double a : kAlphas) {
      const HingeConfig cfg = hinge(c.s, c.v, a, 1.0, c.k, 1.0, 40, threads);
      const ComparisonSeries s = compute_series(cfg);
      double g = 0.0;
      for (std::size_t i = 0; i < s.t.size(); ++i) g = std::max(g, std::abs(s.r[i] - s.r_bar[i]));
      const double dr = max_adjacent_change(s.ratio), dp = max_adjacent_change(s.psi);
      gap = std::max(gap, g);
      dratio = std::max(dratio, dr);
      dpsi = std::max(dpsi, dp);
      t.add(g <= 1e-6 && dr <= 1e-9 && dp <= 1e-9, g - 1e-6,
            run_label(cfg) + " |r-r_bar| " + fmt(g) + " ratio step " + fmt(dr) + " psi step " + fmt(dp));
    }
  }
  return finish(r, t, "max|r-r_bar| " + fmt(gap) + ", ratio defect " + fmt(dratio) + ", psi defect " + fmt(dpsi));
}

CriterionResult theorem11(CriterionResult r, int threads) {
  Tally t;
  const auto sph = surface("sphere", {0.5});
  for (double a : kAlphas) {
    for (double b : kSphereB) {
      const HingeConfig cfg = hinge(sph, kEquator, a, b, CurvatureSign::Positive, b, 40, threads);
      const ComparisonSeries s = compute_series(cfg);
      t.add(check_toponogov(s, cfg.tol.geo_tol), run_label(cfg));
      t.add(check_ratio_monotone(s, kAnalyticSlack), run_label(cfg));
      t.add(check_diff_monotone(s, kAnalyticSlack), run_label(cfg));
    }
  }
  const auto par = surface("paraboloid", {1.0});
  double oracle_gap = 0.0;
  for (double a : kAlphas) {
    for (double b : kFlatB) {
      const HingeConfig cfg = hinge(par, kParaboloidVertex, a, b, CurvatureSign::Zero, b, 40, threads);
      const ComparisonSeries s = compute_series(cfg);
      t.add(check_toponogov(s, cfg.tol.geo_tol), run_label(cfg));
      t.add(check_ratio_monotone(s, kShootingSlack), run_label(cfg));
      t.add(check_diff_monotone(s, kShootingSlack), run_label(cfg));
      // Independent cross-check of the last (longest) distance.
      const Vec2 x1 = shoot(*par, cfg.vertex, cfg.dir1, b, cfg.step).position;
      const Vec2 x2 = shoot(*par, cfg.vertex, cfg.dir2, b, cfg.step).position;
      const double g = distance_graph(*par, x1, x2, 512).value;
      const double rel = std::abs(g - s.r.back()) / s.r.back();
      oracle_gap = std::max(oracle_gap, rel);
      t.add(rel <= 0.01, rel - 0.01, run_label(cfg) + " graph oracle relative gap " + fmt(rel));
    }
  }
  return finish(r, t, "graph oracle max relative gap " + fmt(oracle_gap));
}

CriterionResult theorem11_hyperbolic_model(CriterionResult r, int threads) {
  Tally t;
  const auto plane = surface("euclidean_plane");
  for (double a : kAlphas) {
    for (double b : {0.5, 1.0, 2.0}) {
      const HingeConfig cfg = hinge(plane, kPlaneVertex, a, b, CurvatureSign::Negative, b, 40, threads);
      t.add(check_diff_monotone(compute_series(cfg), kAnalyticSlack), run_label(cfg));
    }
  }
  return finish(r, t, "euclidean_plane against k=-1, difference monotone");
}

CriterionResult theorem31(CriterionResult r, int threads) {
  Tally t;
  auto star_checks = [&](const HingeConfig& cfg, double slack, bool ratio) {
    const ComparisonSeries s = compute_star_series(cfg);
    t.add(check_toponogov(s, cfg.tol.geo_tol), run_label(cfg) + " star");
    if (ratio) t.add(check_ratio_monotone(s, slack), run_label(cfg) + " star");
    t.add(check_diff_monotone(s, slack), run_label(cfg) + " star");
  };
  const auto sph = surface("sphere", {0.5});
  const auto par = surface("paraboloid", {1.0});
  const auto plane = surface("euclidean_plane");
  for (double a : kAlphas) {
    for (double b : kSphereB) star_checks(hinge(sph, kEquator, a, b, CurvatureSign::Positive, b, 40, threads), kAnalyticSlack, true);
    for (double b : kFlatB) star_checks(hinge(par, kParaboloidVertex, a, b, CurvatureSign::Zero, b, 40, threads), kShootingSlack, true);
    for (double b : {0.5, 1.0, 2.0}) star_checks(hinge(plane, kPlaneVertex, a, b, CurvatureSign::Negative, b, 40, threads), kAnalyticSlack, false);
  }
  return finish(r, t, "star series on sphere(0.5), paraboloid(1), plane vs k=-1");
}

CriterionResult corollary32(CriterionResult r, int threads) {
  Tally t;
  const auto plane = surface("euclidean_plane");
  const auto par = surface("paraboloid", {1.0});
  double flat_cor1 = std::numeric_limits<double>::infinity(), flat_cor2 = 0.0;
  for (double a : kAlphas) {
    for (double b : kFlatB) {
      const HingeConfig fc = hinge(plane, kPlaneVertex, a, b, CurvatureSign::Zero, b, 40, threads);
      const CheckReport c1 = check_corollary_1(fc, 1e-9);
      flat_cor1 = std::min(flat_cor1, c1.worst_margin);
      t.add(c1.pass, -c1.worst_margin - 1e-9, run_label(fc) + " cor32_1 margin " + fmt(c1.worst_margin));
      const CheckReport c2 = check_corollary_2(fc, b / 2, b, 1e-9);
      flat_cor2 = std::max(flat_cor2, std::abs(c2.worst_margin));
      t.add(std::abs(c2.worst_margin) <= 1e-9, std::abs(c2.worst_margin) - 1e-9,
            run_label(fc) + " cor32_2 |margin| " + fmt(c2.worst_margin));

      const HingeConfig pc = hinge(par, kParaboloidVertex, a, b, CurvatureSign::Zero, b, 40, threads);
      const CheckReport p1 = check_corollary_1(pc, kShootingSlack);
      t.add(p1.pass, -p1.worst_margin - kShootingSlack, run_label(pc) + " cor32_1 margin " + fmt(p1.worst_margin));
      const CheckReport p2 = check_corollary_2(pc, b / 2, b, kShootingSlack);
      t.add(p2.pass, -p2.worst_margin - kShootingSlack, run_label(pc) + " cor32_2 margin " + fmt(p2.worst_margin));
    }
  }
  return finish(r, t, "flat min cor32_1 margin " + fmt(flat_cor1) + ", flat max |cor32_2 margin| " + fmt(flat_cor2));
}

CriterionResult scalars(CriterionResult r, int threads) {
  Tally t;
  constexpr double slack = 1e-12;
  auto mono = [&](const char* name, const std::function<double(double)>& f, double lo, double hi, Direction d) {
    const MonotonicityReport m = check_monotone(f, lo, hi, 10000, d, slack, threads);
    t.add(m.pass, m.worst_violation - slack, std::string(name) + " violation " + fmt(m.worst_violation));
  };
  mono("f_one_minus_cos", f_one_minus_cos, 1e-3, kPi - 1e-3, Direction::NonDecreasing);
  mono("g_cos_over", g_cos_over, 1e-3, kPi - 1e-3, Direction::NonIncreasing);
  mono("h_cosh_over", h_cosh_over, 1e-3, 20.0, Direction::NonIncreasing);

  // Triangular grids 0 < r <= r_bar <= hi, 500 x 500.
  auto triangle_min = [](double hi, const std::function<double(double, double)>& f) {
    constexpr int n = 500;
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= n; ++i) {
      const double rb = hi * i / n;
      for (int j = 1; j <= n; ++j) worst = std::min(worst, f(rb * j / n, rb));
    }
    return worst;
  };
  const double phi = triangle_min(kPi, phi_spherical);
  t.add(phi >= -1e-12, -phi - 1e-12, "phi_spherical min " + fmt(phi));
  const double gap = triangle_min(5.0, sinh_gap);
  t.add(gap >= -1e-12, -gap - 1e-12, "sinh_gap min " + fmt(gap));

  double witness = -std::numeric_limits<double>::infinity();
  constexpr int n = 500;
  for (int i = 1; i <= n; ++i) {
    const double rb = 5.0 * i / n;
    for (int j = 1; j <= n; ++j) {
      const double rr = rb * j / n;
      if (rb - rr >= 0.01) witness = std::max(witness, hyperbolic_ratio_bound_witness(rr, rb));
    }
  }
  t.add(witness <= -1e-9, witness + 1e-9, "hyperbolic witness max " + fmt(witness));
  return finish(r, t, "phi min " + fmt(phi) + ", sinh_gap min " + fmt(gap) + ", witness max " + fmt(witness));
}

CriterionResult first_variation(CriterionResult r, int threads) {
  Tally t;
  struct Case {
    SurfacePtr s;
    Vec2 v;
    CurvatureSign k;
    double b;
  };
  const std::vector<Case> cases{{surface("euclidean_plane"), kPlaneVertex, CurvatureSign::Zero, 1.0},
                                {surface("sphere", {1.0}), kEquator, CurvatureSign::Positive, kPi / 2},
                                {surface("sphere", {0.5}), kEquator, CurvatureSign::Positive, kPi / 4},
                                {surface("hyperbolic_disk"), kDiskVertex, CurvatureSign::Negative, 1.0}};
  for (const auto& c : cases) {
    for (double a : {kPi / 2, 2 * kPi / 3}) {
      // 22 grid points give 20 interior points.
      HingeConfig cfg = hinge(c.s, c.v, a, c.b, c.k, c.b, 22, threads);
      cfg.tol.deriv_tol = 1e-4;
      for (bool star : {false, true}) {
        const CheckReport rep = check_first_variation(cfg, star);
        const int used = static_cast<int>(cfg.t_grid.size()) - 2 - static_cast<int>(rep.cut_flagged.size());
        t.add(rep.pass && used == 20, rep.worst_margin - rep.slack,
              run_label(cfg) + (star ? " star" : " hinge") + " defect " + fmt(rep.worst_margin) + ", " + rep.note +
                  ", points " + std::to_string(used));
      }
    }
  }
  return finish(r, t, "worst |dr/dt - first variation| " + fmt(t.worst + 1e-4));
}

CriterionResult remark22(CriterionResult r, int threads) {
  Tally t;
  const auto sph = surface("sphere", {0.5});
  for (double a : kAlphas) {
    const HingeConfig cfg = hinge(sph, kEquator, a, kPi / 2, CurvatureSign::Positive, kPi / 2, 15, threads);
    const TwoParamGrid g = compute_two_param_grid(cfg, uniform_grid(kTMin, kPi / 2, 15), kAnalyticSlack);
    if (g.reports.size() != 4) t.add(false, 0.0, run_label(cfg) + " expected four region checks");
    for (const auto& rep : g.reports) t.add(rep, run_label(cfg));
  }
  return finish(r, t, "sphere(0.5) vs k=+1, 15x15 grid");
}

CriterionResult oracles(CriterionResult r, int) {
  Tally t;
  std::ostringstream sum;

  // Shooting against closed forms.
  double shoot_gap = 0.0;
  struct Pair {
    SurfacePtr s;
    Vec2 p, q;
  };
  const auto plane = surface("euclidean_plane");
  const auto s1 = surface("sphere", {1.0});
  const auto s05 = surface("sphere", {0.5});
  const auto disk = surface("hyperbolic_disk");
  const std::vector<Pair> pairs{
      {plane, {0.3, 0.2}, {1.1, -0.4}},      {s1, {kPi / 2, 0.0}, {1.0, 0.9}},
      {s1, {1.2, -0.3}, {2.0, 1.1}},         {s1, {0.6, 0.2}, {1.4, 2.0}},
      {s05, {kPi / 2, 0.0}, {1.2, 1.5}},     {s05, {1.0, -0.5}, {2.2, 0.7}},
      {disk, {0.1, -0.05}, {0.5, 0.3}},      {disk, {-0.4, 0.2}, {0.3, -0.5}},
      {disk, {0.0, 0.6}, {0.2, -0.6}}};
  for (const auto& pr : pairs) {
    const double a = pr.s->analytic_distance(pr.p, pr.q);
    const double sh = distance_shooting(*pr.s, pr.p, pr.q).value;
    const double d = std::abs(a - sh);
    shoot_gap = std::max(shoot_gap, d);
    t.add(d <= 1e-5, d - 1e-5, pr.s->label() + " shooting vs analytic " + fmt(d));
  }
  sum << "shooting gap " << fmt(shoot_gap);

  // Graph oracle at resolution 512.
  double graph_gap = 0.0;
  const auto par = surface("paraboloid", {1.0});
  const std::vector<Pair> graph_pairs{{s1, {kPi / 2, 0.0}, {1.0, 0.9}},
                                      {disk, {0.1, -0.05}, {0.5, 0.3}},
                                      {par, {0.15, -0.1}, {-0.6, 0.7}},
                                      {par, {-0.5, -0.5}, {0.6, 0.2}}};
  for (const auto& pr : graph_pairs) {
    const double ref = distance(*pr.s, pr.p, pr.q).value;
    const double g = distance_graph(*pr.s, pr.p, pr.q, 512).value;
    const double rel = std::abs(g - ref) / ref;
    graph_gap = std::max(graph_gap, rel);
    t.add(rel <= 0.01, rel - 0.01, pr.s->label() + " graph relative gap " + fmt(rel));
  }
  sum << ", graph relative gap " << fmt(graph_gap);

  // Speed drift along long geodesics.
  double drift = 0.0;
  const auto rev = surface("revolution", {-1.5, 1.5, 1.0, 0.0, 0.2});
  struct Ray {
    SurfacePtr s;
    Vec2 p;
    double theta, length;
  };
  const std::vector<Ray> rays{{s1, {kPi / 2, 0.0}, 0.7, 3.0},
                              {disk, {0.1, -0.05}, 2.0, 3.0},
                              {par, {0.15, -0.1}, 0.4, 2.0},
                              {rev, {0.0, 0.0}, 0.9, 1.5}};
  for (const auto& ray : rays) {
    const GeodesicPath path = integrate_geodesic(*ray.s, ray.p, frame_direction(*ray.s, ray.p, ray.theta), ray.length);
    double worst = 0.0;
    for (const auto& smp : path.samples) worst = std::max(worst, std::abs(ray.s->metric(smp.position).norm(smp.tangent) - 1.0));
    const double per_unit = worst / ray.length;
    drift = std::max(drift, per_unit);
    t.add(!path.truncated && per_unit <= 1e-8, per_unit - 1e-8, ray.s->label() + " speed drift " + fmt(per_unit));
  }
  sum << ", speed drift " << fmt(drift);

  // Side -> angle round trip in all three space forms.
  double round_trip = 0.0;
  for (CurvatureSign k : {CurvatureSign::Negative, CurvatureSign::Zero, CurvatureSign::Positive}) {
    for (int i = 1; i <= 12; ++i) {
      for (int j = 1; j <= 12; ++j) {
        for (int l = 0; l < 12; ++l) {
          const double a = (k == CurvatureSign::Positive ? 1.5 : 3.0) * i / 12;
          const double b = (k == CurvatureSign::Positive ? 1.5 : 3.0) * j / 12;
          const double alpha = 0.3 + (kPi - 0.6) * l / 11;
          const double c = law_of_cosines_side(k, {a, b, alpha});
          const double back = law_of_cosines_angle(k, a, b, c);
          round_trip = std::max(round_trip, std::abs(back - alpha));
        }
      }
    }
  }
  t.add(round_trip <= 1e-10, round_trip - 1e-10, "side/angle round trip " + fmt(round_trip));
  sum << ", side/angle round trip " << fmt(round_trip);
  return finish(r, t, sum.str());
}

CriterionResult negative_controls(CriterionResult r, int threads) {
  Tally t;
  // A series pushed above the model must fail the comparison check.
  const HingeConfig cfg = hinge(surface("sphere", {0.5}), kEquator, kPi / 2, kPi / 4, CurvatureSign::Positive, kPi / 4, 40, threads);
  ComparisonSeries s = compute_series(cfg);
  s.r[17] = s.r_bar[17] + 1e-3;
  const CheckReport corrupted = check_toponogov(s, cfg.tol.geo_tol);
  t.add(!corrupted.pass && corrupted.worst_index == 17, 0.0,
        "corrupted series was accepted (worst index " + std::to_string(corrupted.worst_index) + ")");

  const std::string base =
      "surface.name = euclidean_plane\n"
      "hinge.vertex = 0.3, 0.2\n"
      "hinge.dir1_angle = pi/4\n"
      "hinge.dir2_angle = 3*pi/4\n"
      "hinge.b = 1\n"
      "grid.t_max = 1\n";
  RunOptions opt;
  opt.threads = threads;
  const RunOutcome hyper = run_spec_text(base + "model.k = -1\nrun.checks = thm11A\n", "", opt);
  t.add(hyper.exit_code == 2, 0.0, "k=-1 ratio request exited " + std::to_string(hyper.exit_code));

  const RunOutcome tight = run_spec_text(
      base + "model.k = 0\ndistance.method = shooting\nrun.checks = thm11B\ntolerances.slack.thm11B = 0\n", "", opt);
  t.add(tight.exit_code == 1, 0.0, "slack-0 shooting run exited " + std::to_string(tight.exit_code));
  return finish(r, t,
                "corrupted index " + std::to_string(corrupted.worst_index) + ", k=-1 ratio exit " +
                    std::to_string(hyper.exit_code) + ", slack-0 shooting exit " + std::to_string(tight.exit_code));
}

struct Criterion {
  const char* title;
  double limit;
  CriterionResult (*run)(CriterionResult, int);
};

const Criterion kCriteria[] = {
    {"self-model identity", 5.0, self_model},
    {"hinge comparison on non-model surfaces", 60.0, theorem11},
    {"difference monotonicity against k=-1", 2.0, theorem11_hyperbolic_model},
    {"star series comparison", 60.0, theorem31},
    {"corollaries of the hinge comparison", 30.0, corollary32},
    {"scalar lemmas", 5.0, scalars},
    {"first-variation identities", 30.0, first_variation},
    {"two-parameter grid", 30.0, remark22},
    {"oracle consistency", 60.0, oracles},
    {"negative controls", 5.0, negative_controls},
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"selfmodel", "theorem11", "theorem31", "corollary32", "scalars", "oracles"};
  return names;
}

std::vector<int> suite_criteria(const std::string& name) {
  if (name == "selfmodel") return {1};
  if (name == "theorem11") return {2, 3, 7, 8};
  if (name == "theorem31") return {4};
  if (name == "corollary32") return {5};
  if (name == "scalars") return {6};
  if (name == "oracles") return {9, 10};
  throw ConfigError("unknown suite '" + name + "'");
}

CriterionResult run_criterion(int id, int threads) {
  if (id < 1 || id > 10) throw ConfigError("criterion id must be 1..10");
  const Criterion& c = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = c.title;
  r.limit_seconds = c.limit;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r = c.run(r, std::max(1, threads));
  } catch (const std::exception& e) {
    r.checks_pass = false;
    r.detail = std::string("aborted: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

int run_suite(const std::string& name, int threads, const CriterionSink& sink) {
  bool all = true;
  for (int id : suite_criteria(name)) {
    const CriterionResult r = run_criterion(id, threads);
    all = all && r.pass();
    if (sink) sink(r);
  }
  return all ? 0 : 1;
}

}  // namespace topo
