#include "topo/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "topo/errors.hpp"
#include "topo/scalarlab.hpp"

namespace topo {

namespace {

constexpr double kPi = std::numbers::pi;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> plain_number(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

// A number, or a multiple of pi written as [c*]pi[/d].
std::optional<double> real_value(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (auto v = plain_number(s)) return v;
  double sign = 1.0;
  if (s.front() == '-') {
    sign = -1.0;
    s.remove_prefix(1);
  }
  const auto at = s.find("pi");
  if (at == std::string_view::npos) return std::nullopt;
  double coef = 1.0, den = 1.0;
  const auto head = s.substr(0, at), tail = s.substr(at + 2);
  if (!head.empty()) {
    if (head.back() != '*') return std::nullopt;
    auto c = plain_number(head.substr(0, head.size() - 1));
    if (!c) return std::nullopt;
    coef = *c;
  }
  if (!tail.empty()) {
    if (tail.front() != '/') return std::nullopt;
    auto d = plain_number(tail.substr(1));
    if (!d || *d == 0.0) return std::nullopt;
    den = *d;
  }
  return sign * coef * kPi / den;
}

struct Field {
  std::string key;
  std::string value;
  int line;
};

[[noreturn]] void fail(const Field& f, const std::string& msg) {
  throw ConfigError("line " + std::to_string(f.line) + " (" + f.key + "): " + msg);
}

double real_field(const Field& f) {
  auto v = real_value(f.value);
  if (!v || !std::isfinite(*v)) fail(f, "expected a number, got '" + f.value + "'");
  return *v;
}

int int_field(const Field& f) {
  const double v = real_field(f);
  if (v != std::floor(v) || std::abs(v) > 1e9) fail(f, "expected an integer, got '" + f.value + "'");
  return static_cast<int>(v);
}

std::vector<double> list_field(const Field& f) {
  std::vector<double> out;
  if (trim(f.value).empty()) return out;
  for (auto part : split(f.value, ',')) {
    auto v = real_value(part);
    if (!v || !std::isfinite(*v)) fail(f, "bad list entry '" + std::string(part) + "'");
    out.push_back(*v);
  }
  return out;
}

Vec2 vec_field(const Field& f) {
  const auto v = list_field(f);
  if (v.size() != 2) fail(f, "expected two comma-separated numbers");
  return {v[0], v[1]};
}

bool is_known_claim(const std::string& c) {
  const auto& k = known_claims();
  return std::find(k.begin(), k.end(), c) != k.end();
}

std::vector<std::string> default_checks(RunMode mode, CurvatureSign k) {
  const bool ratio = k != CurvatureSign::Negative;
  switch (mode) {
    case RunMode::Hinge:
      return ratio ? std::vector<std::string>{"toponogov", "thm11A", "thm11B"}
                   : std::vector<std::string>{"toponogov", "thm11B"};
    case RunMode::Star:
      return ratio ? std::vector<std::string>{"toponogov", "thm31A", "thm31B"}
                   : std::vector<std::string>{"toponogov", "thm31B"};
    case RunMode::TwoParam: return {"rmk22"};
    case RunMode::Probe: return {};
  }
  return {};
}

bool claim_fits_mode(const std::string& c, RunMode mode) {
  if (c == "toponogov" || c == "first_variation") return mode == RunMode::Hinge || mode == RunMode::Star;
  if (c == "thm11A" || c == "thm11B" || c == "cor32_1" || c == "cor32_2") return mode == RunMode::Hinge;
  if (c == "thm31A" || c == "thm31B") return mode == RunMode::Star;
  if (c == "rmk22") return mode == RunMode::TwoParam;
  return false;
}

// Cross-field rules that do not need the surface.
void check_semantics(const ExperimentSpec& s) {
  auto where = [&](const std::string& key) {
    auto it = s.key_line.find(key);
    return it == s.key_line.end() ? key : "line " + std::to_string(it->second) + " (" + key + ")";
  };
  for (const char* req : {"surface.name", "hinge.vertex", "model.k", "grid.t_max"}) {
    if (!s.key_line.count(req)) throw ConfigError(std::string("missing required key ") + req);
  }
  if (!s.dir1 && !s.dir1_angle) throw ConfigError("missing hinge.dir1 or hinge.dir1_angle");
  if (!s.dir2 && !s.dir2_angle) throw ConfigError("missing hinge.dir2 or hinge.dir2_angle");
  if ((s.mode == RunMode::Hinge || s.mode == RunMode::Probe) && !s.b) {
    throw ConfigError("missing hinge.b (required in " + std::string(to_string(s.mode)) + " mode)");
  }
  if (s.n < 2) throw ConfigError(where("grid.n") + ": need at least two grid points");
  if (s.s_n < 2) throw ConfigError(where("grid.s_n") + ": need at least two grid points");
  if (s.t_min && !(*s.t_min > 0.0)) throw ConfigError(where("grid.t_min") + ": must be positive");
  if (s.t_min && !(*s.t_min < s.t_max)) throw ConfigError(where("grid.t_max") + ": must exceed grid.t_min");
  if (!(s.step > 0.0)) throw ConfigError(where("integrator.step") + ": must be positive");
  if ((s.s_min || s.s_max) && s.mode != RunMode::TwoParam) {
    throw ConfigError(where(s.s_min ? "grid.s_min" : "grid.s_max") + ": s grid only applies to two_param mode");
  }
  if (s.mode == RunMode::Probe && s.key_line.count("run.checks") && !s.checks.empty()) {
    throw ConfigError(where("run.checks") + ": probe mode is exploratory and takes no checks");
  }
  for (const auto& [claim, v] : s.slack) {
    if (!is_known_claim(claim)) throw ConfigError(where("tolerances.slack." + claim) + ": unknown claim");
    if (!(v >= 0.0)) throw ConfigError(where("tolerances.slack." + claim) + ": slack must be non-negative");
  }
  for (const auto& c : s.checks) {
    if (!is_known_claim(c)) throw ConfigError(where("run.checks") + ": unknown claim '" + c + "'");
    if (!claim_fits_mode(c, s.mode)) {
      throw ConfigError(where("run.checks") + ": claim '" + c + "' does not apply to " +
                        std::string(to_string(s.mode)) + " mode");
    }
    if ((c == "thm11A" || c == "thm31A") && s.k == CurvatureSign::Negative) {
      throw UnsupportedCurvature(where("run.checks") + ": " + c +
                                 " (ratio monotonicity) is not established for k = -1; only the difference "
                                 "statement is. Use run.mode = probe with run.probe = ratio_hyperbolic to explore it");
    }
    if (c == "thm11A" || c == "thm11B") {
      if (s.b && s.t_max > *s.b + 1e-12) {
        throw ConfigError(where("grid.t_max") + ": " + c + " is only claimed for t <= b");
      }
      if (s.k == CurvatureSign::Positive && s.b && *s.b > kPi / 2 + 1e-12) {
        throw ConfigError(where("hinge.b") + ": " + c + " with k = +1 needs b <= pi/2");
      }
    }
    if ((c == "thm31A" || c == "thm31B") && s.k == CurvatureSign::Positive && s.t_max > kPi / 2 + 1e-12) {
      throw ConfigError(where("grid.t_max") + ": " + c + " with k = +1 needs t <= pi/2");
    }
    if (c == "cor32_2" && (!s.l1 || !s.l2)) throw ConfigError("cor32_2 needs corollary.l1 and corollary.l2");
  }
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

std::string_view to_string(RunMode m) {
  switch (m) {
    case RunMode::Hinge: return "hinge";
    case RunMode::Star: return "star";
    case RunMode::TwoParam: return "two_param";
    case RunMode::Probe: return "probe";
  }
  return "?";
}

const std::vector<std::string>& known_claims() {
  static const std::vector<std::string> claims{"toponogov", "thm11A", "thm11B", "thm31A", "thm31B",
                                               "first_variation", "cor32_1", "cor32_2", "rmk22"};
  return claims;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string digest_hex(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentSpec parse_spec(std::string_view text) {
  ExperimentSpec s;
  s.source = std::string(text);
  std::set<std::string> seen;
  int line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    const auto hash = raw.find('#');
    const auto line = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    Field f{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), line_no};
    if (f.key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (!seen.insert(f.key).second) fail(f, "key set twice");
    s.key_line[f.key] = line_no;
    const std::string& k = f.key;

    if (k == "surface.name") {
      s.surface_name = f.value;
    } else if (k == "surface.params") {
      s.surface_params = list_field(f);
    } else if (k == "hinge.vertex") {
      s.vertex = vec_field(f);
    } else if (k == "hinge.dir1") {
      s.dir1 = vec_field(f);
    } else if (k == "hinge.dir2") {
      s.dir2 = vec_field(f);
    } else if (k == "hinge.dir1_angle") {
      s.dir1_angle = real_field(f);
    } else if (k == "hinge.dir2_angle") {
      s.dir2_angle = real_field(f);
    } else if (k == "hinge.alpha") {
      s.alpha = real_field(f);
    } else if (k == "hinge.b") {
      s.b = real_field(f);
    } else if (k == "model.k") {
      const int v = int_field(f);
      if (v < -1 || v > 1) fail(f, "k must be -1, 0 or 1");
      s.k = curvature_from_int(v);
    } else if (k == "grid.t_min") {
      s.t_min = real_field(f);
    } else if (k == "grid.t_max") {
      s.t_max = real_field(f);
    } else if (k == "grid.n") {
      s.n = int_field(f);
    } else if (k == "grid.s_min") {
      s.s_min = real_field(f);
    } else if (k == "grid.s_max") {
      s.s_max = real_field(f);
    } else if (k == "grid.s_n") {
      s.s_n = int_field(f);
    } else if (k == "run.mode") {
      if (f.value == "hinge") s.mode = RunMode::Hinge;
      else if (f.value == "star") s.mode = RunMode::Star;
      else if (f.value == "two_param") s.mode = RunMode::TwoParam;
      else if (f.value == "probe") s.mode = RunMode::Probe;
      else fail(f, "unknown mode '" + f.value + "' (hinge, star, two_param, probe)");
    } else if (k == "run.probe") {
      if (f.value == "t_greater_than_b") s.probe = ProbeMode::TGreaterThanB;
      else if (f.value == "ratio_hyperbolic") s.probe = ProbeMode::RatioHyperbolic;
      else fail(f, "unknown probe '" + f.value + "' (t_greater_than_b, ratio_hyperbolic)");
    } else if (k == "run.checks") {
      s.checks.clear();
      for (auto c : split(f.value, ',')) {
        if (!c.empty()) s.checks.emplace_back(c);
      }
    } else if (k == "tolerances.geo_tol") {
      s.geo_tol = real_field(f);
    } else if (k == "tolerances.mono_slack") {
      s.mono_slack = real_field(f);
    } else if (k == "tolerances.deriv_tol") {
      s.deriv_tol = real_field(f);
    } else if (k.rfind("tolerances.slack.", 0) == 0) {
      s.slack[k.substr(17)] = real_field(f);
    } else if (k == "integrator.step") {
      s.step = real_field(f);
    } else if (k == "distance.method") {
      if (f.value == "auto") s.distance = DistanceMode::Auto;
      else if (f.value == "shooting") s.distance = DistanceMode::Shooting;
      else fail(f, "unknown distance method '" + f.value + "' (auto, shooting)");
    } else if (k == "distance.scan_angles") {
      s.shooting.scan_angles = int_field(f);
      if (s.shooting.scan_angles < 8) fail(f, "need at least 8 scan angles");
    } else if (k == "distance.max_newton") {
      s.shooting.max_newton = int_field(f);
      if (s.shooting.max_newton < 0) fail(f, "must be non-negative");
    } else if (k == "corollary.l1") {
      s.l1 = real_field(f);
    } else if (k == "corollary.l2") {
      s.l2 = real_field(f);
    } else if (k == "output.dir") {
      s.output_dir = f.value;
    } else {
      fail(f, "unknown key '" + k + "'");
    }
  }
  if (!s.key_line.count("run.checks")) s.checks = default_checks(s.mode, s.k);
  check_semantics(s);
  return s;
}

ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read spec file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_spec(os.str());
}

HingeConfig prepare_hinge(const ExperimentSpec& spec, int threads) {
  std::shared_ptr<const MetricSurface> surface;
  try {
    surface = std::make_shared<const MetricSurface>(builtin_surface(spec.surface_name, spec.surface_params));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("surface: ") + e.what());
  }
  HingeConfig cfg;
  cfg.surface = surface;
  cfg.vertex = spec.vertex;
  cfg.k = spec.k;
  cfg.step = spec.step;
  cfg.distance_mode = spec.distance;
  cfg.shooting = spec.shooting;
  cfg.threads = std::max(1, threads);
  if (!surface->domain().contains(spec.vertex)) throw ConfigError("hinge.vertex lies outside the chart of " + surface->label());
  try {
    cfg.dir1 = spec.dir1 ? normalize(*surface, spec.vertex, *spec.dir1) : frame_direction(*surface, spec.vertex, *spec.dir1_angle);
    cfg.dir2 = spec.dir2 ? normalize(*surface, spec.vertex, *spec.dir2) : frame_direction(*surface, spec.vertex, *spec.dir2_angle);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("hinge directions: ") + e.what());
  }
  const double measured = angle_between(*surface, spec.vertex, cfg.dir1, cfg.dir2);
  cfg.alpha = spec.alpha.value_or(measured);
  cfg.tol = default_tolerances(cfg.analytic_distances());
  if (spec.geo_tol) cfg.tol.geo_tol = *spec.geo_tol;
  if (spec.mono_slack) cfg.tol.mono_slack = *spec.mono_slack;
  if (spec.deriv_tol) cfg.tol.deriv_tol = *spec.deriv_tol;
  const double t_min = spec.t_min.value_or(std::max(0.05, 2.0 * cfg.tol.geo_tol));
  if (!(t_min < spec.t_max)) throw ConfigError("grid.t_max must exceed grid.t_min = " + format_number(t_min));
  cfg.t_grid = uniform_grid(t_min, spec.t_max, spec.n);
  cfg.b = spec.b.value_or(spec.t_max);
  double extra = 0.0;
  if (spec.mode == RunMode::TwoParam) {
    extra = std::max(0.0, spec.s_max.value_or(spec.t_max) - std::max(cfg.b, spec.t_max));
  }
  for (const auto& c : spec.checks) {
    if (c == "first_variation") extra = std::max(extra, kFirstVariationStep);
    if (c == "cor32_2" && spec.l2) extra = std::max(extra, *spec.l2 - std::max(cfg.b, spec.t_max));
  }
  validate_hinge(cfg, spec.mode != RunMode::Probe, extra);
  return cfg;
}

RunOutcome run_experiment(const ExperimentSpec& spec, const RunOptions& opt) {
  RunOutcome out;
  try {
    const HingeConfig cfg = prepare_hinge(spec, opt.threads);
    const std::string ladder = cfg.analytic_distances() ? "analytic" : "shooting";
    auto slack_for = [&](const std::string& claim, std::string& rung) {
      if (auto it = opt.slack_overrides.find(claim); it != opt.slack_overrides.end()) {
        rung = "override";
        return it->second;
      }
      if (auto it = spec.slack.find(claim); it != spec.slack.end()) {
        rung = "spec";
        return it->second;
      }
      if (claim == "toponogov") {
        rung = ladder + ":geo_tol";
        return cfg.tol.geo_tol;
      }
      if (claim == "first_variation") {
        rung = "deriv_tol";
        return cfg.tol.deriv_tol;
      }
      rung = ladder + ":mono_slack";
      return cfg.tol.mono_slack;
    };

    switch (spec.mode) {
      case RunMode::Hinge:
      case RunMode::Star: {
        const bool star = spec.mode == RunMode::Star;
        out.series = star ? compute_star_series(cfg) : compute_series(cfg);
        for (const auto& c : spec.checks) {
          std::string rung;
          const double slack = slack_for(c, rung);
          CheckReport rep;
          if (c == "toponogov") rep = check_toponogov(*out.series, slack);
          else if (c == "thm11A" || c == "thm31A") rep = check_ratio_monotone(*out.series, slack);
          else if (c == "thm11B" || c == "thm31B") rep = check_diff_monotone(*out.series, slack);
          else if (c == "first_variation") {
            HingeConfig fv = cfg;
            fv.tol.deriv_tol = slack;
            rep = check_first_variation(fv, star);
          } else if (c == "cor32_1") rep = check_corollary_1(cfg, slack);
          else if (c == "cor32_2") rep = check_corollary_2(cfg, *spec.l1, *spec.l2, slack);
          out.reports.push_back(rep);
          out.rungs.push_back(rung);
        }
        break;
      }
      case RunMode::TwoParam: {
        std::string rung;
        const double slack = slack_for("rmk22", rung);
        const double s_lo = spec.s_min.value_or(cfg.t_grid.front());
        const double s_hi = spec.s_max.value_or(cfg.t_grid.back());
        if (!(s_lo > 0.0 && s_lo < s_hi)) throw ConfigError("s grid needs 0 < grid.s_min < grid.s_max");
        out.grid = compute_two_param_grid(cfg, uniform_grid(s_lo, s_hi, spec.s_n), slack);
        out.reports = out.grid->reports;
        out.rungs.assign(out.reports.size(), rung);
        break;
      }
      case RunMode::Probe: {
        out.exploratory = true;
        out.probe = probe_open_region(cfg, spec.probe);
        out.series = out.probe->series;
        break;
      }
    }
    const bool all = std::all_of(out.reports.begin(), out.reports.end(), [](const CheckReport& r) { return r.pass; });
    out.exit_code = all ? 0 : 1;
    if (!all) {
      for (const auto& r : out.reports) {
        if (!r.pass) {
          out.message += r.claim + " failed: worst_margin " + format_number(r.worst_margin) + " at index " +
                         std::to_string(r.worst_index) + " (slack " + format_number(r.slack) + ")\n";
        }
      }
    }
  } catch (const NumericalError& e) {
    out.exit_code = 3;
    out.incomplete = true;
    out.message = std::string("numerical failure: ") + e.what();
  } catch (const ConfigError& e) {
    out.exit_code = 2;
    out.incomplete = true;
    out.message = std::string("configuration error: ") + e.what();
  } catch (const DomainError& e) {
    out.exit_code = 2;
    out.incomplete = true;
    out.message = std::string("configuration error: ") + e.what();
  } catch (const std::exception& e) {
    out.exit_code = 3;
    out.incomplete = true;
    out.message = std::string("internal failure: ") + e.what();
  }
  return out;
}

void write_artifacts(const RunOutcome& out, std::string_view source_text, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory '" + dir + "'");
  std::ostringstream head;
  head << "# toponogov run digest=fnv1a64:" << digest_hex(source_text) << " utc=" << utc_now() << "\n";
  if (out.exploratory) head << "# " << ProbeResult::kMarker << ": descriptive data, no claim is asserted\n";
  if (out.incomplete) {
    std::string msg = out.message;
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    head << "# INCOMPLETE: " << msg << "\n";
  }
  auto open = [&](const std::string& name) {
    std::ofstream f(fs::path(dir) / name, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + (fs::path(dir) / name).string());
    f << head.str();
    return f;
  };

  if (out.series) {
    const auto& s = *out.series;
    auto f = open("series.csv");
    f << "t,r,r_bar,ratio,psi,cut_flag\n";
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      f << format_number(s.t[i]) << ',' << format_number(s.r[i]) << ',' << format_number(s.r_bar[i]) << ','
        << format_number(s.ratio[i]) << ',' << format_number(s.psi[i]) << ',' << (s.cut_flag[i] ? 1 : 0) << '\n';
    }
  }
  if (out.grid) {
    const auto& g = *out.grid;
    auto f = open("grid.csv");
    f << "t,s,r,r_bar,ratio,psi,cut_flag\n";
    for (std::size_t i = 0; i < g.t.size(); ++i) {
      for (std::size_t j = 0; j < g.s.size(); ++j) {
        const std::size_t x = i * g.s.size() + j;
        f << format_number(g.t[i]) << ',' << format_number(g.s[j]) << ',' << format_number(g.r[x]) << ','
          << format_number(g.r_bar[x]) << ',' << format_number(g.ratio[x]) << ',' << format_number(g.psi[x])
          << ',' << (g.cut_flag[x] ? 1 : 0) << '\n';
      }
    }
  }
  {
    auto f = open("summary.csv");
    f << "claim,pass,worst_margin,worst_index,slack\n";
    for (const auto& r : out.reports) {
      f << r.claim << ',' << (r.pass ? "true" : "false") << ',' << format_number(r.worst_margin) << ','
        << r.worst_index << ',' << format_number(r.slack) << '\n';
    }
    if (out.probe) {
      const auto& p = *out.probe;
      f << "probe_ratio,exploratory," << format_number(p.ratio_worst) << ",-1,0\n";
      f << "probe_psi,exploratory," << format_number(p.psi_worst) << ",-1,0\n";
    }
  }
  {
    auto f = open("reports.txt");
    for (std::size_t i = 0; i < out.reports.size(); ++i) {
      const auto& r = out.reports[i];
      f << "[" << r.claim << "]\n"
        << "pass = " << (r.pass ? "true" : "false") << "\n"
        << "worst_margin = " << format_number(r.worst_margin) << "\n"
        << "worst_index = " << r.worst_index << "\n"
        << "slack = " << format_number(r.slack) << "\n"
        << "slack_rule = " << (i < out.rungs.size() ? out.rungs[i] : "") << "\n"
        << "excluded = " << join_ints(r.excluded) << "\n"
        << "cut_flagged = " << join_ints(r.cut_flagged) << "\n"
        << "note = " << r.note << "\n\n";
    }
    if (out.probe) {
      const auto& p = *out.probe;
      f << "[probe]\n"
        << "ratio_increasing_pairs = " << p.ratio_positive << "\nratio_decreasing_pairs = " << p.ratio_negative
        << "\npsi_decreasing_pairs = " << p.psi_positive << "\npsi_increasing_pairs = " << p.psi_negative
        << "\nratio_worst = " << format_number(p.ratio_worst) << "\npsi_worst = " << format_number(p.psi_worst)
        << "\n\n";
    }
    if (!out.message.empty()) f << "[message]\n" << out.message << "\n";
  }
}

RunOutcome run_spec_text(std::string_view text, const std::string& out_dir, const RunOptions& opt) {
  RunOutcome out;
  std::string dir = out_dir;
  try {
    const ExperimentSpec spec = parse_spec(text);
    if (dir.empty()) dir = spec.output_dir;
    out = run_experiment(spec, opt);
  } catch (const ConfigError& e) {
    out.exit_code = 2;
    out.incomplete = true;
    out.message = std::string("configuration error: ") + e.what();
  }
  if (!dir.empty()) {
    try {
      write_artifacts(out, text, dir);
    } catch (const std::exception& e) {
      out.message += std::string(out.message.empty() ? "" : "\n") + "output error: " + e.what();
      if (out.exit_code == 0 || out.exit_code == 1) out.exit_code = 2;
    }
  }
  return out;
}

RunOutcome run_spec_file(const std::string& path, const std::string& out_dir, const RunOptions& opt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    RunOutcome out;
    out.exit_code = 2;
    out.incomplete = true;
    out.message = "configuration error: cannot read spec file '" + path + "'";
    return out;
  }
  std::ostringstream os;
  os << in.rdbuf();
  return run_spec_text(os.str(), out_dir, opt);
}

void write_funcs(const std::string& dir, int n) {
  namespace fs = std::filesystem;
  if (n < 1) throw ConfigError("funcs grid needs at least one point");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory '" + dir + "'");
  std::ofstream f(fs::path(dir) / "funcs.csv", std::ios::binary);
  if (!f) throw ConfigError("cannot write funcs.csv in '" + dir + "'");
  f << "t,f_one_minus_cos,g_cos_over,h_cosh_over\n";
  for (int i = 1; i <= n; ++i) {
    const double t = kPi * i / (n + 1);
    f << format_number(t) << ',' << format_number(f_one_minus_cos(t)) << ',' << format_number(g_cos_over(t)) << ','
      << format_number(h_cosh_over(t)) << '\n';
  }
}

}  // namespace topo
