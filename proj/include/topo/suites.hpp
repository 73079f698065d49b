#pragma once

// Built-in acceptance bundles. Each criterion is a fixed set of runs with
// pinned tolerances and a wall-clock budget.

#include <functional>
#include <string>
#include <vector>

namespace topo {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool checks_pass = false;
  double seconds = 0.0;
  double limit_seconds = 0.0;
  double worst = 0.0;  // most adverse measured quantity, meaning per criterion
  std::string detail;

  bool within_time() const { return seconds < limit_seconds; }
  bool pass() const { return checks_pass && within_time(); }
};

using CriterionSink = std::function<void(const CriterionResult&)>;

const std::vector<std::string>& suite_names();
// Criterion ids bundled by a suite; throws ConfigError for unknown names.
std::vector<int> suite_criteria(const std::string& name);

// Runs one criterion (1..10). Numerical failures become a failing row.
CriterionResult run_criterion(int id, int threads = 1);

// Runs every criterion of the suite in order, reporting each to `sink`.
// Returns 0 when all pass, 1 otherwise.
int run_suite(const std::string& name, int threads, const CriterionSink& sink);

}  // namespace topo
