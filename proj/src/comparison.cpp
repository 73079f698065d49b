#include "topo/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "topo/errors.hpp"
#include "topo/parallel.hpp"

namespace topo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kRangeTol = 1e-12;

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

Vec2 point_on(const HingeConfig& cfg, const Vec2& dir, double length) {
  const GeodesicEnd e = shoot(*cfg.surface, cfg.vertex, dir, length, cfg.step);
  if (e.truncated) throw ConfigError("geodesic of length " + num(length) + " leaves the chart of " + cfg.surface->label());
  return e.position;
}

GeodesicEnd end_on(const HingeConfig& cfg, const Vec2& dir, double length) {
  const GeodesicEnd e = shoot(*cfg.surface, cfg.vertex, dir, length, cfg.step);
  if (e.truncated) throw ConfigError("geodesic of length " + num(length) + " leaves the chart of " + cfg.surface->label());
  return e;
}

DistanceResult measure(const HingeConfig& cfg, const Vec2& p, const Vec2& q) {
  if (cfg.distance_mode == DistanceMode::Shooting) return distance_shooting(*cfg.surface, p, q, cfg.shooting);
  return distance(*cfg.surface, p, q, cfg.shooting);
}

// Rethrows numerical failures with the grid position attached.
template <typename F>
auto at_t(double t, F&& f) {
  try {
    return f();
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " (at t = " + num(t) + ")", e.best_value(), e.residual());
  }
}

void fill_derived(ComparisonSeries& s) {
  const std::size_t n = s.t.size();
  s.ratio.assign(n, std::numeric_limits<double>::quiet_NaN());
  s.psi.resize(n);
  s.ratio_defined.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    s.psi[i] = s.r_bar[i] - s.r[i];
    if (s.r_bar[i] > s.geo_tol) {
      s.ratio[i] = s.r[i] / s.r_bar[i];
      s.ratio_defined[i] = true;
    }
  }
}

std::vector<int> cut_indices(const std::vector<bool>& flags) {
  std::vector<int> out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

enum class Want { NonIncreasing, NonDecreasing };

// Adjacent-pair reduction over the indices in `use`, in order.
void reduce_pairs(CheckReport& rep, const std::vector<double>& v, const std::vector<int>& use, Want want) {
  rep.worst_margin = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a + 1 < use.size(); ++a) {
    const int i = use[a], j = use[a + 1];
    double defect = want == Want::NonIncreasing ? v[static_cast<std::size_t>(j)] - v[static_cast<std::size_t>(i)]
                                                : v[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(j)];
    if (std::isnan(defect)) defect = std::numeric_limits<double>::infinity();
    if (defect > rep.worst_margin) {
      rep.worst_margin = defect;
      rep.worst_index = i;
    }
  }
  if (use.size() < 2) {
    rep.worst_margin = 0.0;
    rep.note = "fewer than two usable points";
  }
  rep.pass = rep.worst_margin <= rep.slack;
}

// Toponogov gate: monotonicity is only asserted on series that satisfy
// r <= r_bar + geo_tol everywhere.
bool apply_gate(CheckReport& rep, const ComparisonSeries& s) {
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    if (s.r[i] > s.r_bar[i] + s.geo_tol) {
      rep.pass = false;
      rep.note = "toponogov gate failed at index " + std::to_string(i);
      return false;
    }
  }
  return true;
}

void require_proven_range(const ComparisonSeries& s, const char* claim) {
  if (s.mode == SeriesMode::Hinge) {
    for (double t : s.t) {
      if (t > s.b + kRangeTol) {
        throw ConfigError(std::string(claim) + " is only claimed for t <= b; grid reaches t = " + num(t) +
                          " with b = " + num(s.b));
      }
    }
    if (s.k == CurvatureSign::Positive && s.b > kHalfPi + kRangeTol) {
      throw ConfigError(std::string(claim) + " with k = +1 needs b <= pi/2, got b = " + num(s.b));
    }
  } else if (s.k == CurvatureSign::Positive) {
    for (double t : s.t) {
      if (t > kHalfPi + kRangeTol) {
        throw ConfigError(std::string(claim) + " with k = +1 needs t <= pi/2; grid reaches t = " + num(t));
      }
    }
  }
}

double five_point_derivative(const std::function<double(double)>& f, double t, double h) {
  return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h);
}

}  // namespace

Tolerances default_tolerances(bool analytic_distances) {
  Tolerances t;
  if (analytic_distances) {
    t.geo_tol = 1e-6;
    t.mono_slack = kAnalyticSlack;
  } else {
    t.geo_tol = kShootingSlack;
    t.mono_slack = kShootingSlack;
  }
  t.deriv_tol = 1e-4;
  return t;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 1) throw ConfigError("grid needs at least one point");
  if (n == 1) return {hi};
  if (!(lo < hi)) throw ConfigError("grid needs lo < hi");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  g.back() = hi;
  return g;
}

HingeConfig make_hinge(std::shared_ptr<const MetricSurface> surface, const Vec2& vertex, double theta1,
                       double theta2, double b, CurvatureSign k, std::vector<double> t_grid) {
  HingeConfig cfg;
  cfg.dir1 = frame_direction(*surface, vertex, theta1);
  cfg.dir2 = frame_direction(*surface, vertex, theta2);
  cfg.alpha = angle_between(*surface, vertex, cfg.dir1, cfg.dir2);
  cfg.surface = std::move(surface);
  cfg.vertex = vertex;
  cfg.b = b;
  cfg.k = k;
  cfg.t_grid = std::move(t_grid);
  cfg.tol = default_tolerances(cfg.surface->has_analytic_distance());
  return cfg;
}

void validate_hinge(const HingeConfig& cfg, bool require_bound, double extra_length) {
  if (!cfg.surface) throw ConfigError("hinge has no surface");
  const MetricSurface& m = *cfg.surface;
  const SafeZone& safe = m.safe_zone();
  if (!safe.region.contains(cfg.vertex)) {
    throw ConfigError("vertex (" + num(cfg.vertex.x()) + ", " + num(cfg.vertex.y()) + ") outside the safe zone of " + m.label());
  }
  const Metric g = m.metric(cfg.vertex);
  for (const Vec2* d : {&cfg.dir1, &cfg.dir2}) {
    if (std::abs(g.norm(*d) - 1.0) > 1e-9) throw ConfigError("hinge directions must have unit metric length");
  }
  const double alpha = angle_between(m, cfg.vertex, cfg.dir1, cfg.dir2);
  if (std::abs(alpha - cfg.alpha) > kAngleConsistencyTol) {
    throw ConfigError("configured alpha = " + num(cfg.alpha) + " disagrees with the angle between the directions, " +
                      num(alpha));
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha <= kPi)) throw ConfigError("alpha must lie in (0, pi]");
  if (!(cfg.b > 0.0) || !std::isfinite(cfg.b)) throw ConfigError("b must be positive");
  if (cfg.t_grid.empty()) throw ConfigError("t grid is empty");
  if (!(cfg.t_grid.front() > 0.0)) throw ConfigError("t grid must start above 0");
  for (std::size_t i = 1; i < cfg.t_grid.size(); ++i) {
    if (!(cfg.t_grid[i] > cfg.t_grid[i - 1])) throw ConfigError("t grid must be strictly increasing");
  }
  if (!(cfg.step > 0.0)) throw ConfigError("integrator step must be positive");
  if (require_bound) {
    const auto bound = m.curvature_bound();
    if (!bound) throw ConfigError(m.label() + " declares no curvature lower bound");
    if (to_int(*bound) < to_int(cfg.k)) {
      throw ConfigError(m.label() + " only certifies sec >= " + std::string(to_string(*bound)) +
                        ", cannot compare against k = " + std::string(to_string(cfg.k)));
    }
  }
  const double reach = std::max(cfg.b, cfg.t_grid.back()) + std::max(extra_length, 0.0);
  if (reach > safe.max_length + kRangeTol) {
    throw ConfigError("geodesic length " + num(reach) + " exceeds the safe radius " + num(safe.max_length) +
                      " of " + m.label());
  }
  for (const Vec2* d : {&cfg.dir1, &cfg.dir2}) {
    const GeodesicPath path = integrate_geodesic(m, cfg.vertex, *d, reach, cfg.step);
    if (path.truncated) throw ConfigError("hinge geodesic leaves the chart of " + m.label());
    for (const auto& smp : path.samples) {
      if (!safe.region.contains(smp.position)) {
        throw ConfigError("hinge geodesic leaves the safe zone of " + m.label() + " at arc length " + num(smp.s));
      }
    }
  }
}

ComparisonSeries compute_series(const HingeConfig& cfg) {
  validate_hinge(cfg, false);
  ComparisonSeries s;
  s.mode = SeriesMode::Hinge;
  s.k = cfg.k;
  s.alpha = cfg.alpha;
  s.b = cfg.b;
  s.geo_tol = cfg.tol.geo_tol;
  s.analytic = cfg.analytic_distances();
  s.t = cfg.t_grid;
  const std::size_t n = s.t.size();
  s.r.resize(n);
  s.r_bar.resize(n);
  s.cut_flag.assign(n, false);
  std::vector<double> err(n, 0.0);
  const Vec2 far = point_on(cfg, cfg.dir1, cfg.b);
  std::vector<char> cut(n, 0);
  parallel_for(n, cfg.threads, [&](std::size_t i) {
    const double t = s.t[i];
    const DistanceResult d = at_t(t, [&] { return measure(cfg, far, point_on(cfg, cfg.dir2, t)); });
    s.r[i] = d.value;
    err[i] = d.est_error;
    cut[i] = d.cut_suspect;
    s.r_bar[i] = law_of_cosines_side(cfg.k, {cfg.b, t, cfg.alpha});
  });
  for (std::size_t i = 0; i < n; ++i) s.cut_flag[i] = cut[i] != 0;
  s.max_est_error = *std::max_element(err.begin(), err.end());
  fill_derived(s);
  return s;
}

ComparisonSeries compute_star_series(const HingeConfig& cfg) {
  validate_hinge(cfg, false);
  ComparisonSeries s;
  s.mode = SeriesMode::Star;
  s.k = cfg.k;
  s.alpha = cfg.alpha;
  s.b = cfg.b;
  s.geo_tol = cfg.tol.geo_tol;
  s.analytic = cfg.analytic_distances();
  s.t = cfg.t_grid;
  const std::size_t n = s.t.size();
  s.r.resize(n);
  s.r_bar.resize(n);
  std::vector<double> err(n, 0.0);
  std::vector<char> cut(n, 0);
  parallel_for(n, cfg.threads, [&](std::size_t i) {
    const double t = s.t[i];
    const DistanceResult d = at_t(t, [&] {
      return measure(cfg, point_on(cfg, cfg.dir1, t), point_on(cfg, cfg.dir2, t));
    });
    s.r[i] = d.value;
    err[i] = d.est_error;
    cut[i] = d.cut_suspect;
    s.r_bar[i] = law_of_cosines_side(cfg.k, {t, t, cfg.alpha});
  });
  s.cut_flag.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) s.cut_flag[i] = cut[i] != 0;
  s.max_est_error = *std::max_element(err.begin(), err.end());
  fill_derived(s);
  return s;
}

CheckReport check_toponogov(const ComparisonSeries& s, double slack) {
  CheckReport rep;
  rep.claim = "toponogov";
  rep.slack = slack;
  rep.cut_flagged = cut_indices(s.cut_flag);
  rep.worst_margin = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    double m = s.r[i] - s.r_bar[i];
    if (std::isnan(m)) m = std::numeric_limits<double>::infinity();
    if (m > rep.worst_margin) {
      rep.worst_margin = m;
      rep.worst_index = static_cast<int>(i);
    }
  }
  rep.pass = rep.worst_margin <= slack;
  return rep;
}

CheckReport check_ratio_monotone(const ComparisonSeries& s, double slack) {
  const char* claim = s.mode == SeriesMode::Hinge ? "thm11A" : "thm31A";
  if (s.k == CurvatureSign::Negative) {
    throw UnsupportedCurvature(std::string(claim) +
                               ": ratio monotonicity is not established for k = -1 (the proof only yields the "
                               "difference statement there); use the exploratory probe instead");
  }
  require_proven_range(s, claim);
  CheckReport rep;
  rep.claim = claim;
  rep.slack = slack;
  rep.cut_flagged = cut_indices(s.cut_flag);
  std::vector<int> use;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    if (s.ratio_defined[i]) {
      use.push_back(static_cast<int>(i));
    } else {
      rep.excluded.push_back(static_cast<int>(i));
    }
  }
  reduce_pairs(rep, s.ratio, use, Want::NonIncreasing);
  apply_gate(rep, s);
  return rep;
}

CheckReport check_diff_monotone(const ComparisonSeries& s, double slack) {
  const char* claim = s.mode == SeriesMode::Hinge ? "thm11B" : "thm31B";
  require_proven_range(s, claim);
  CheckReport rep;
  rep.claim = claim;
  rep.slack = slack;
  rep.cut_flagged = cut_indices(s.cut_flag);
  std::vector<int> use(s.t.size());
  for (std::size_t i = 0; i < use.size(); ++i) use[i] = static_cast<int>(i);
  reduce_pairs(rep, s.psi, use, Want::NonDecreasing);
  apply_gate(rep, s);
  return rep;
}

FirstVariationSample first_variation_check(const HingeConfig& cfg, double t, bool star) {
  const MetricSurface& m = *cfg.surface;
  const double delta = kFirstVariationStep;
  if (!(t > delta)) throw DomainError("first variation needs t > " + num(delta));
  FirstVariationSample out;
  out.t = t;

  const GeodesicEnd e2 = end_on(cfg, cfg.dir2, t);
  const Vec2 x2 = e2.position;
  const Vec2 t2 = normalize(m, x2, e2.tangent);
  // Model step: five-point stencil kept inside the model's valid range.
  double hm = std::min(1e-3, 0.25 * t);
  if (cfg.k == CurvatureSign::Positive) {
    const double room = star ? kHalfPi - t : kPi - cfg.b - t;
    if (room > 0.0) hm = std::min(hm, 0.5 * room);
  }

  if (!star) {
    const Vec2 far = point_on(cfg, cfg.dir1, cfg.b);
    const DistanceResult link = at_t(t, [&] { return distance_shooting(m, far, x2, cfg.shooting); });
    if (link.cut_suspect) throw DomainError("t = " + num(t) + " is a suspected cut point");
    out.beta = angle_between(m, x2, t2, link.arrival_direction);
    auto r_at = [&](double tau) { return measure(cfg, far, point_on(cfg, cfg.dir2, tau)).value; };
    out.dr_dt_numeric = at_t(t, [&] { return (r_at(t + delta) - r_at(t - delta)) / (2 * delta); });
    auto model = [&](double tau) { return law_of_cosines_side(cfg.k, {cfg.b, tau, cfg.alpha}); };
    out.beta_bar = model_beta_bar(cfg.k, cfg.b, t, model(t));
    out.dr_bar_dt_numeric = five_point_derivative(model, t, hm);
    out.defect = std::abs(out.dr_dt_numeric - std::cos(out.beta));
    out.model_defect = std::abs(out.dr_bar_dt_numeric - std::cos(out.beta_bar));
    return out;
  }

  const GeodesicEnd e1 = end_on(cfg, cfg.dir1, t);
  const Vec2 x1 = e1.position;
  const Vec2 t1 = normalize(m, x1, e1.tangent);
  const DistanceResult link = at_t(t, [&] { return distance_shooting(m, x1, x2, cfg.shooting); });
  if (link.cut_suspect) throw DomainError("t = " + num(t) + " is a suspected cut point");
  out.beta = angle_between(m, x2, t2, link.arrival_direction);
  out.gamma_angle = angle_between(m, x1, t1, -link.initial_direction);
  auto r_at = [&](double tau) {
    return measure(cfg, point_on(cfg, cfg.dir1, tau), point_on(cfg, cfg.dir2, tau)).value;
  };
  out.dr_dt_numeric = at_t(t, [&] { return (r_at(t + delta) - r_at(t - delta)) / (2 * delta); });
  auto model = [&](double tau) { return law_of_cosines_side(cfg.k, {tau, tau, cfg.alpha}); };
  out.beta_bar = isoceles_beta_bar(cfg.k, t, cfg.alpha);
  out.dr_bar_dt_numeric = five_point_derivative(model, t, hm);
  out.defect = std::abs(out.dr_dt_numeric - (std::cos(out.beta) + std::cos(out.gamma_angle)));
  out.model_defect = std::abs(out.dr_bar_dt_numeric - 2.0 * std::cos(out.beta_bar));
  return out;
}

CheckReport check_first_variation(const HingeConfig& cfg, bool star) {
  validate_hinge(cfg, false, kFirstVariationStep);
  CheckReport rep;
  rep.claim = "first_variation";
  rep.slack = cfg.tol.deriv_tol;
  const std::size_t n = cfg.t_grid.size();
  std::vector<FirstVariationSample> samples(n);
  std::vector<char> status(n, 0);  // 0 skipped, 1 evaluated, 2 cut
  parallel_for(n, cfg.threads, [&](std::size_t i) {
    if (i == 0 || i + 1 == n) return;
    try {
      samples[i] = first_variation_check(cfg, cfg.t_grid[i], star);
      status[i] = 1;
    } catch (const DomainError&) {
      status[i] = 2;
    }
  });
  double model_worst = 0.0;
  rep.worst_margin = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (status[i] != 1) {
      rep.excluded.push_back(static_cast<int>(i));
      if (status[i] == 2) rep.cut_flagged.push_back(static_cast<int>(i));
      continue;
    }
    if (rep.worst_index < 0 || samples[i].defect > rep.worst_margin) {
      rep.worst_margin = samples[i].defect;
      rep.worst_index = static_cast<int>(i);
    }
    model_worst = std::max(model_worst, samples[i].model_defect);
  }
  rep.pass = rep.worst_index >= 0 && rep.worst_margin <= rep.slack && model_worst <= kModelDerivativeTol;
  rep.note = "model defect " + num(model_worst);
  if (rep.worst_index < 0) rep.note += "; no interior smooth points";
  return rep;
}

namespace {

void require_nonnegative_surface(const HingeConfig& cfg, const char* claim) {
  const auto bound = cfg.surface->curvature_bound();
  if (!bound || to_int(*bound) < 0) {
    throw ConfigError(std::string(claim) + " needs a surface with nonnegative curvature; " + cfg.surface->label() +
                      " does not certify sec >= 0");
  }
  if (cfg.k != CurvatureSign::Zero) throw ConfigError(std::string(claim) + " compares against the flat model, set k = 0");
}

}  // namespace

CheckReport check_corollary_1(const HingeConfig& cfg, double slack) {
  require_nonnegative_surface(cfg, "cor32_1");
  const ComparisonSeries s = compute_series(cfg);
  const double d = measure(cfg, point_on(cfg, cfg.dir1, cfg.b), point_on(cfg, cfg.dir2, cfg.b)).value;
  const double bound = d * std::cos(0.5 * cfg.alpha);
  CheckReport rep;
  rep.claim = "cor32_1";
  rep.slack = slack;
  rep.cut_flagged = cut_indices(s.cut_flag);
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    const double m = s.r[i] - bound;
    if (m < rep.worst_margin) {
      rep.worst_margin = m;
      rep.worst_index = static_cast<int>(i);
    }
  }
  rep.pass = rep.worst_margin >= -slack;
  rep.note = "d = " + num(d);
  return rep;
}

double corollary2_margin(double d1, double d2, double l1, double l2) { return d1 - (l1 / l2) * d2; }

CheckReport check_corollary_2(const HingeConfig& cfg, double l1, double l2, double slack) {
  require_nonnegative_surface(cfg, "cor32_2");
  if (!(l1 > 0.0 && l1 < l2)) throw ConfigError("cor32_2 needs 0 < l1 < l2");
  HingeConfig reach = cfg;
  reach.t_grid = {l1, l2};
  validate_hinge(reach, false);
  const double d1 = measure(cfg, point_on(cfg, cfg.dir1, l1), point_on(cfg, cfg.dir2, l1)).value;
  const double d2 = measure(cfg, point_on(cfg, cfg.dir1, l2), point_on(cfg, cfg.dir2, l2)).value;
  CheckReport rep;
  rep.claim = "cor32_2";
  rep.slack = slack;
  rep.worst_margin = corollary2_margin(d1, d2, l1, l2);
  rep.worst_index = 0;
  rep.pass = rep.worst_margin >= -slack;
  rep.note = "d1 = " + num(d1) + ", d2 = " + num(d2);
  return rep;
}

TwoParamGrid compute_two_param_grid(const HingeConfig& cfg, const std::vector<double>& s_grid, double slack) {
  if (s_grid.empty()) throw ConfigError("s grid is empty");
  for (std::size_t i = 1; i < s_grid.size(); ++i) {
    if (!(s_grid[i] > s_grid[i - 1])) throw ConfigError("s grid must be strictly increasing");
  }
  if (!(s_grid.front() > 0.0)) throw ConfigError("s grid must start above 0");
  validate_hinge(cfg, false, s_grid.back() - std::max(cfg.b, cfg.t_grid.back()));
  if (cfg.k == CurvatureSign::Positive) {
    if (cfg.t_grid.back() > kHalfPi + kRangeTol || s_grid.back() > kHalfPi + kRangeTol) {
      throw ConfigError("rmk22 with k = +1 needs t, s <= pi/2");
    }
  }

  TwoParamGrid g;
  g.t = cfg.t_grid;
  g.s = s_grid;
  const std::size_t nt = g.t.size(), ns = g.s.size();
  std::vector<Vec2> x1(nt), x2(ns);
  for (std::size_t i = 0; i < nt; ++i) x1[i] = point_on(cfg, cfg.dir1, g.t[i]);
  for (std::size_t j = 0; j < ns; ++j) x2[j] = point_on(cfg, cfg.dir2, g.s[j]);
  g.r.resize(nt * ns);
  g.r_bar.resize(nt * ns);
  g.ratio.assign(nt * ns, std::numeric_limits<double>::quiet_NaN());
  g.psi.resize(nt * ns);
  std::vector<char> cut(nt * ns, 0);
  parallel_for(nt * ns, cfg.threads, [&](std::size_t idx) {
    const std::size_t i = idx / ns, j = idx % ns;
    const DistanceResult d = at_t(g.t[i], [&] { return measure(cfg, x1[i], x2[j]); });
    g.r[idx] = d.value;
    cut[idx] = d.cut_suspect;
    g.r_bar[idx] = law_of_cosines_side(cfg.k, {g.t[i], g.s[j], cfg.alpha});
  });
  g.cut_flag.assign(nt * ns, false);
  for (std::size_t idx = 0; idx < nt * ns; ++idx) {
    g.cut_flag[idx] = cut[idx] != 0;
    g.psi[idx] = g.r_bar[idx] - g.r[idx];
    if (g.r_bar[idx] > cfg.tol.geo_tol) g.ratio[idx] = g.r[idx] / g.r_bar[idx];
  }

  auto make = [&](const std::string& claim, const std::vector<double>& v, Want want, bool along_s) {
    CheckReport rep;
    rep.claim = claim;
    rep.slack = slack;
    rep.worst_margin = -std::numeric_limits<double>::infinity();
    for (std::size_t idx = 0; idx < nt * ns; ++idx) {
      if (g.cut_flag[idx]) rep.cut_flagged.push_back(static_cast<int>(idx));
      if (g.r[idx] > g.r_bar[idx] + cfg.tol.geo_tol) {
        rep.note = "toponogov gate failed at cell " + std::to_string(idx);
      }
    }
    // Along s inside row t_i: pairs s_j < s_{j+1} <= t_i. Along t inside
    // column s_j: pairs t_i < t_{i+1} <= s_j.
    const std::size_t outer = along_s ? nt : ns, inner = along_s ? ns : nt;
    for (std::size_t o = 0; o < outer; ++o) {
      const double limit = along_s ? g.t[o] : g.s[o];
      for (std::size_t a = 0; a + 1 < inner; ++a) {
        const double next = along_s ? g.s[a + 1] : g.t[a + 1];
        if (next > limit + kRangeTol) break;
        const std::size_t i0 = along_s ? o * ns + a : a * ns + o;
        const std::size_t i1 = along_s ? o * ns + a + 1 : (a + 1) * ns + o;
        double defect = want == Want::NonIncreasing ? v[i1] - v[i0] : v[i0] - v[i1];
        if (std::isnan(defect)) continue;
        if (defect > rep.worst_margin) {
          rep.worst_margin = defect;
          rep.worst_index = static_cast<int>(i0);
        }
      }
    }
    if (rep.worst_index < 0) {
      rep.worst_margin = 0.0;
      rep.note += rep.note.empty() ? "no pairs in region" : "; no pairs in region";
    }
    rep.pass = rep.worst_margin <= slack && rep.note.find("gate") == std::string::npos;
    return rep;
  };
  if (cfg.k != CurvatureSign::Negative) {
    g.reports.push_back(make("rmk22_ratio_s", g.ratio, Want::NonIncreasing, true));
    g.reports.push_back(make("rmk22_ratio_t", g.ratio, Want::NonIncreasing, false));
  }
  g.reports.push_back(make("rmk22_psi_s", g.psi, Want::NonDecreasing, true));
  g.reports.push_back(make("rmk22_psi_t", g.psi, Want::NonDecreasing, false));
  return g;
}

ProbeResult probe_open_region(const HingeConfig& cfg, ProbeMode mode) {
  HingeConfig c = cfg;
  if (mode == ProbeMode::RatioHyperbolic) c.k = CurvatureSign::Negative;
  ProbeResult out;
  out.series = compute_series(c);
  const auto& s = out.series;
  out.ratio_worst = out.psi_worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < s.t.size(); ++i) {
    if (s.ratio_defined[i] && s.ratio_defined[i + 1]) {
      const double d = s.ratio[i + 1] - s.ratio[i];
      (d > 0 ? out.ratio_positive : out.ratio_negative)++;
      out.ratio_worst = std::max(out.ratio_worst, d);
    }
    const double d = s.psi[i] - s.psi[i + 1];
    (d > 0 ? out.psi_positive : out.psi_negative)++;
    out.psi_worst = std::max(out.psi_worst, d);
  }
  return out;
}

}  // namespace topo
