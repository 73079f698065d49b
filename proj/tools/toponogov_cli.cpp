// Command-line front end. Links only the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "toponogov.h"

namespace {

struct SlackOverride {
  std::string claim;
  double value = 0.0;
};

bool parse_override(const std::string& text, SlackOverride& out) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) return false;
  out.claim = text.substr(0, eq);
  try {
    std::size_t used = 0;
    out.value = std::stod(text.substr(eq + 1), &used);
    return used == text.size() - eq - 1;
  } catch (const std::exception&) {
    return false;
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

struct SuiteSink {
  std::vector<std::string> rows;
};

void on_row(const topo_criterion* r, void* user) {
  char num[128];
  std::snprintf(num, sizeof num, "%.6f,%.0f,%.17g", r->seconds, r->limit_seconds, r->worst);
  std::string row = std::to_string(r->id) + "," + csv_field(r->title) + "," + (r->pass ? "true" : "false") + "," +
                    (r->checks_pass ? "true" : "false") + "," + num + "," + csv_field(r->detail);
  std::cout << row << std::endl;
  static_cast<SuiteSink*>(user)->rows.push_back(row);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative hinge comparison lab"};
  app.require_subcommand(1);

  int threads = 1;
  std::vector<std::string> overrides;
  app.add_option("--threads", threads, "Worker threads (speed only, results are identical)")
      ->check(CLI::PositiveNumber);
  app.add_option("--slack-override", overrides, "Per-claim slack, claim=value (repeatable)");

  auto* run = app.add_subcommand("run", "Run an experiment document");
  std::string spec_path, out_dir;
  run->add_option("--spec", spec_path, "Experiment document")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output.dir)");

  auto* suite = app.add_subcommand("suite", "Run a built-in acceptance suite");
  std::string suite_name, suite_out;
  std::vector<std::string> names;
  for (size_t i = 0; i < topo_suite_count(); ++i) names.emplace_back(topo_suite_name(i));
  suite->add_option("name", suite_name, "Suite name")->required()->check(CLI::IsMember(names));
  suite->add_option("--out", suite_out, "Also write the rows to this CSV file");

  auto* funcs = app.add_subcommand("funcs", "Tabulate the scalar lemma functions");
  int grid = 200;
  std::string funcs_out = ".";
  funcs->add_option("--grid", grid, "Number of sample points")->check(CLI::PositiveNumber);
  funcs->add_option("--out", funcs_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::vector<SlackOverride> parsed;
  for (const auto& o : overrides) {
    SlackOverride s;
    if (!parse_override(o, s)) {
      std::cerr << "error: --slack-override expects claim=value, got '" << o << "'\n";
      return 2;
    }
    parsed.push_back(s);
  }

  if (*run) {
    std::vector<const char*> claims;
    std::vector<double> values;
    for (const auto& s : parsed) {
      claims.push_back(s.claim.c_str());
      values.push_back(s.value);
    }
    const int code = topo_run_spec(spec_path.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(), threads,
                                   claims.data(), values.data(), claims.size());
    const std::string msg = topo_last_error();
    if (!msg.empty()) std::cerr << msg << (msg.back() == '\n' ? "" : "\n");
    std::cerr << (code == 0 ? "all checks passed" : code == 1 ? "check failed" : code == 2 ? "configuration error" : "numerical failure")
              << " (exit " << code << ")\n";
    return code;
  }

  if (*suite) {
    if (!parsed.empty()) {
      std::cerr << "error: suites use pinned tolerances, --slack-override does not apply\n";
      return 2;
    }
    SuiteSink sink;
    std::cout << "criterion,title,pass,checks_pass,seconds,limit_seconds,worst,detail" << std::endl;
    int code = 0;
    if (topo_run_suite(suite_name.c_str(), threads, on_row, &sink, &code) != TOPO_OK) {
      std::cerr << "error: " << topo_last_error() << "\n";
      return 2;
    }
    if (!suite_out.empty()) {
      std::ofstream f(suite_out);
      if (!f) {
        std::cerr << "error: cannot write " << suite_out << "\n";
        return 2;
      }
      f << "criterion,title,pass,checks_pass,seconds,limit_seconds,worst,detail\n";
      for (const auto& r : sink.rows) f << r << "\n";
    }
    return code;
  }

  if (*funcs) {
    if (topo_write_funcs(funcs_out.c_str(), grid) != TOPO_OK) {
      std::cerr << "error: " << topo_last_error() << "\n";
      return 2;
    }
    std::cerr << "wrote " << funcs_out << "/funcs.csv\n";
    return 0;
  }
  return 2;
}
