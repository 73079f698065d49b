#pragma once

// Line-oriented experiment documents and the runner that turns them into
// CSV artifacts. The schema is described in docs/config-schema.md.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topo/comparison.hpp"

namespace topo {

enum class RunMode { Hinge, Star, TwoParam, Probe };

std::string_view to_string(RunMode m);

struct ExperimentSpec {
  std::string surface_name;
  std::vector<double> surface_params;

  Vec2 vertex = Vec2::Zero();
  // Either chart vectors or frame angles; exactly one form per direction.
  std::optional<Vec2> dir1, dir2;
  std::optional<double> dir1_angle, dir2_angle;
  std::optional<double> alpha;
  std::optional<double> b;

  CurvatureSign k = CurvatureSign::Zero;
  std::optional<double> t_min;
  double t_max = 0.0;
  int n = 40;
  std::optional<double> s_min, s_max;
  int s_n = 15;

  RunMode mode = RunMode::Hinge;
  ProbeMode probe = ProbeMode::TGreaterThanB;
  std::vector<std::string> checks;  // filled with the mode defaults when absent

  std::optional<double> geo_tol, mono_slack, deriv_tol;
  std::map<std::string, double> slack;  // per-claim overrides

  double step = kDefaultGeodesicStep;
  DistanceMode distance = DistanceMode::Auto;
  ShootingOptions shooting;
  std::optional<double> l1, l2;
  std::string output_dir;

  std::string source;                  // original text, for the digest
  std::map<std::string, int> key_line;  // where each key was set
};

// Claim identifiers accepted in run.checks.
const std::vector<std::string>& known_claims();

// Parses and validates a document. Errors are ConfigError (or
// UnsupportedCurvature) with a "line N" or key-addressed message.
ExperimentSpec parse_spec(std::string_view text);
ExperimentSpec load_spec(const std::string& path);

// Builds the surface and hinge and checks everything that needs them
// (safe zone, curvature bound, angle consistency).
HingeConfig prepare_hinge(const ExperimentSpec& spec, int threads = 1);

struct RunOptions {
  int threads = 1;
  std::map<std::string, double> slack_overrides;
};

struct RunOutcome {
  int exit_code = 0;  // 0 pass, 1 check failed, 2 configuration, 3 numerical
  std::string message;
  bool incomplete = false;
  bool exploratory = false;
  std::vector<CheckReport> reports;
  std::vector<std::string> rungs;  // which slack rule applied, per report
  std::optional<ComparisonSeries> series;
  std::optional<TwoParamGrid> grid;
  std::optional<ProbeResult> probe;
};

RunOutcome run_experiment(const ExperimentSpec& spec, const RunOptions& opt = {});

// Writes series.csv (or grid.csv), summary.csv and reports.txt into `dir`,
// creating it if needed. Headers carry a digest of `source_text`. Throws
// ConfigError when the directory is unusable.
void write_artifacts(const RunOutcome& out, std::string_view source_text, const std::string& dir);

// Parses, runs and writes in one go; never throws. `out_dir` overrides
// output.dir when non-empty. Diagnostics go to `message`.
RunOutcome run_spec_file(const std::string& path, const std::string& out_dir, const RunOptions& opt);
RunOutcome run_spec_text(std::string_view text, const std::string& out_dir, const RunOptions& opt);

// FNV-1a 64-bit digest, hex.
std::string digest_hex(std::string_view text);

// 17 significant digits, locale independent.
std::string format_number(double x);

// Tabulates f_one_minus_cos, g_cos_over and h_cosh_over on n interior
// points of (0, pi) into funcs.csv.
void write_funcs(const std::string& dir, int n);

}  // namespace topo
