#include "toponogov.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "topo/comparison.hpp"
#include "topo/errors.hpp"
#include "topo/experiment.hpp"
#include "topo/scalarlab.hpp"
#include "topo/suites.hpp"

struct topo_surface {
  std::shared_ptr<const topo::MetricSurface> surface;
  std::string label;
};

struct topo_experiment {
  topo::ExperimentSpec spec;
  topo::RunOptions options;
  std::optional<topo::RunOutcome> outcome;
};

namespace {

thread_local std::string g_last_error;

struct InvalidArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
void need(const T* p, const char* what) {
  if (!p) throw InvalidArgument(std::string(what) + " must not be null");
}

template <typename F>
topo_status guard(F&& f) {
  g_last_error.clear();
  try {
    f();
    return TOPO_OK;
  } catch (const InvalidArgument& e) {
    g_last_error = e.what();
    return TOPO_ERR_INVALID_ARG;
  } catch (const topo::UnsupportedCurvature& e) {
    g_last_error = e.what();
    return TOPO_ERR_UNSUPPORTED;
  } catch (const topo::ConfigError& e) {
    g_last_error = e.what();
    return TOPO_ERR_CONFIG;
  } catch (const topo::DomainError& e) {
    g_last_error = e.what();
    return TOPO_ERR_DOMAIN;
  } catch (const topo::NumericalError& e) {
    g_last_error = e.what();
    return TOPO_ERR_NUMERICAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TOPO_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return TOPO_ERR_INTERNAL;
  }
}

topo::CurvatureSign sign_of(int k) {
  if (k < -1 || k > 1) throw InvalidArgument("k must be -1, 0 or 1");
  return topo::curvature_from_int(k);
}

topo::Vec2 vec(const double* p, const char* what) {
  need(p, what);
  return {p[0], p[1]};
}

template <typename F>
topo_status scalar(double* out, F&& f) {
  return guard([&] {
    need(out, "out");
    *out = f();
  });
}

void fill(const topo::DistanceResult& r, topo_distance_result* out) {
  out->value = r.value;
  out->initial_direction[0] = r.initial_direction.x();
  out->initial_direction[1] = r.initial_direction.y();
  out->arrival_direction[0] = r.arrival_direction.x();
  out->arrival_direction[1] = r.arrival_direction.y();
  out->method = static_cast<topo_distance_method>(static_cast<int>(r.method));
  out->est_error = r.est_error;
  out->cut_suspect = r.cut_suspect ? 1 : 0;
  out->candidates = r.candidates;
}

void emit(const topo::CriterionResult& r, topo_criterion_callback cb, void* user) {
  if (!cb) return;
  const topo_criterion row{r.id,      r.title.c_str(),   r.pass() ? 1 : 0, r.checks_pass ? 1 : 0,
                           r.seconds, r.limit_seconds, r.worst,          r.detail.c_str()};
  cb(&row, user);
}

}  // namespace

extern "C" {

const char* topo_version(void) { return "1.0.0"; }

const char* topo_status_name(topo_status status) {
  switch (status) {
    case TOPO_OK: return "ok";
    case TOPO_ERR_DOMAIN: return "domain error";
    case TOPO_ERR_CONFIG: return "configuration error";
    case TOPO_ERR_NUMERICAL: return "numerical failure";
    case TOPO_ERR_UNSUPPORTED: return "unsupported curvature";
    case TOPO_ERR_INVALID_ARG: return "invalid argument";
    case TOPO_ERR_IO: return "i/o error";
    case TOPO_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* topo_last_error(void) { return g_last_error.c_str(); }

topo_status topo_law_of_cosines_side(int k, double a, double b, double alpha, double* out) {
  return scalar(out, [&] { return topo::law_of_cosines_side(sign_of(k), {a, b, alpha}); });
}

topo_status topo_law_of_cosines_angle(int k, double a, double adjacent, double opposite, double* out) {
  return scalar(out, [&] { return topo::law_of_cosines_angle(sign_of(k), a, adjacent, opposite); });
}

topo_status topo_model_beta_bar(int k, double b, double t, double r_bar, double* out) {
  return scalar(out, [&] { return topo::model_beta_bar(sign_of(k), b, t, r_bar); });
}

topo_status topo_isoceles_beta_bar(int k, double t, double alpha, double* out) {
  return scalar(out, [&] { return topo::isoceles_beta_bar(sign_of(k), t, alpha); });
}

topo_status topo_f_one_minus_cos(double t, double* out) {
  return scalar(out, [&] { return topo::f_one_minus_cos(t); });
}

topo_status topo_g_cos_over(double t, double* out) {
  return scalar(out, [&] { return topo::g_cos_over(t); });
}

topo_status topo_h_cosh_over(double t, double* out) {
  return scalar(out, [&] { return topo::h_cosh_over(t); });
}

topo_status topo_phi_spherical(double r, double r_bar, double* out) {
  return scalar(out, [&] { return topo::phi_spherical(r, r_bar); });
}

topo_status topo_sinh_gap(double r, double r_bar, double* out) {
  return scalar(out, [&] { return topo::sinh_gap(r, r_bar); });
}

topo_status topo_hyperbolic_ratio_bound_witness(double r, double r_bar, double* out) {
  return scalar(out, [&] { return topo::hyperbolic_ratio_bound_witness(r, r_bar); });
}

topo_status topo_check_monotone(topo_scalar_fn f, void* user, double lo, double hi, int n, topo_direction direction,
                                double slack, topo_monotone_report* out) {
  return guard([&] {
    need(out, "out");
    if (!f) throw InvalidArgument("function must not be null");
    if (direction != TOPO_NON_DECREASING && direction != TOPO_NON_INCREASING) {
      throw InvalidArgument("unknown direction");
    }
    const auto dir = direction == TOPO_NON_DECREASING ? topo::Direction::NonDecreasing : topo::Direction::NonIncreasing;
    const auto rep = topo::check_monotone([&](double x) { return f(x, user); }, lo, hi, n, dir, slack);
    out->worst_violation = rep.worst_violation;
    out->worst_location = rep.worst_location;
    out->samples = rep.samples;
    out->pass = rep.pass ? 1 : 0;
  });
}

topo_status topo_surface_create(const char* name, const double* params, size_t n_params, topo_surface** out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    if (n_params && !params) throw InvalidArgument("params must not be null when n_params > 0");
    *out = nullptr;
    auto s = std::make_shared<const topo::MetricSurface>(
        topo::builtin_surface(name, std::span<const double>(params, n_params)));
    *out = new topo_surface{s, s->label()};
  });
}

void topo_surface_destroy(topo_surface* s) { delete s; }

const char* topo_surface_label(const topo_surface* s) { return s ? s->label.c_str() : ""; }

topo_status topo_surface_curvature_bound(const topo_surface* s, int* has_bound, int* k) {
  return guard([&] {
    need(s, "surface");
    need(has_bound, "has_bound");
    need(k, "k");
    const auto b = s->surface->curvature_bound();
    *has_bound = b ? 1 : 0;
    *k = b ? topo::to_int(*b) : 0;
  });
}

topo_status topo_surface_metric(const topo_surface* s, const double p[2], double out[3]) {
  return guard([&] {
    need(s, "surface");
    need(out, "out");
    const topo::Vec2 x = vec(p, "p");
    if (!s->surface->domain().contains(x)) throw topo::DomainError("point outside the chart of " + s->label);
    const topo::Metric g = s->surface->metric(x);
    out[0] = g.E;
    out[1] = g.F;
    out[2] = g.G;
  });
}

topo_status topo_surface_christoffel(const topo_surface* s, const double p[2], double out[8]) {
  return guard([&] {
    need(s, "surface");
    need(out, "out");
    const topo::Christoffel c = topo::christoffel(*s->surface, vec(p, "p"));
    for (int k = 0; k < 2; ++k) {
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) out[4 * k + 2 * i + j] = c.symbols[k][i][j];
      }
    }
  });
}

topo_status topo_surface_curvature(const topo_surface* s, const double p[2], double* out) {
  return guard([&] {
    need(s, "surface");
    need(out, "out");
    *out = topo::gaussian_curvature(*s->surface, vec(p, "p"));
  });
}

topo_status topo_frame_direction(const topo_surface* s, const double p[2], double theta, double out[2]) {
  return guard([&] {
    need(s, "surface");
    need(out, "out");
    const topo::Vec2 d = topo::frame_direction(*s->surface, vec(p, "p"), theta);
    out[0] = d.x();
    out[1] = d.y();
  });
}

topo_status topo_angle_between(const topo_surface* s, const double p[2], const double u[2], const double v[2],
                               double* out) {
  return guard([&] {
    need(s, "surface");
    need(out, "out");
    *out = topo::angle_between(*s->surface, vec(p, "p"), vec(u, "u"), vec(v, "v"));
  });
}

topo_status topo_exp_map(const topo_surface* s, const double p[2], const double v[2], double step, double out[2]) {
  return guard([&] {
    need(s, "surface");
    need(out, "out");
    const topo::Vec2 x = topo::exp_map(*s->surface, vec(p, "p"), vec(v, "v"), step > 0 ? step : topo::kDefaultGeodesicStep);
    out[0] = x.x();
    out[1] = x.y();
  });
}

topo_status topo_distance(const topo_surface* s, const double p[2], const double q[2], int force_shooting,
                          topo_distance_result* out) {
  return guard([&] {
    need(s, "surface");
    need(out, "out");
    const auto r = force_shooting ? topo::distance_shooting(*s->surface, vec(p, "p"), vec(q, "q"))
                                  : topo::distance(*s->surface, vec(p, "p"), vec(q, "q"));
    fill(r, out);
  });
}

topo_status topo_distance_graph(const topo_surface* s, const double p[2], const double q[2], int resolution,
                                int stencil, topo_distance_result* out) {
  return guard([&] {
    need(s, "surface");
    need(out, "out");
    fill(topo::distance_graph(*s->surface, vec(p, "p"), vec(q, "q"), resolution, stencil), out);
  });
}

topo_status topo_experiment_parse(const char* text, topo_experiment** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = nullptr;
    auto e = std::make_unique<topo_experiment>();
    e->spec = topo::parse_spec(text);
    *out = e.release();
  });
}

topo_status topo_experiment_load(const char* path, topo_experiment** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = nullptr;
    auto e = std::make_unique<topo_experiment>();
    e->spec = topo::load_spec(path);
    *out = e.release();
  });
}

void topo_experiment_destroy(topo_experiment* e) { delete e; }

topo_status topo_experiment_set_slack(topo_experiment* e, const char* claim, double slack) {
  return guard([&] {
    need(e, "experiment");
    need(claim, "claim");
    const auto& known = topo::known_claims();
    if (std::find(known.begin(), known.end(), claim) == known.end()) {
      throw topo::ConfigError(std::string("unknown claim '") + claim + "'");
    }
    if (!(slack >= 0.0)) throw topo::ConfigError("slack must be non-negative");
    e->options.slack_overrides[claim] = slack;
  });
}

topo_status topo_experiment_run(topo_experiment* e, int threads, int* exit_code) {
  return guard([&] {
    need(e, "experiment");
    need(exit_code, "exit_code");
    e->options.threads = threads < 1 ? 1 : threads;
    e->outcome = topo::run_experiment(e->spec, e->options);
    *exit_code = e->outcome->exit_code;
  });
}

const char* topo_experiment_message(const topo_experiment* e) {
  return e && e->outcome ? e->outcome->message.c_str() : "";
}

size_t topo_experiment_report_count(const topo_experiment* e) {
  return e && e->outcome ? e->outcome->reports.size() : 0;
}

topo_status topo_experiment_report(const topo_experiment* e, size_t i, topo_check_report* out) {
  return guard([&] {
    need(e, "experiment");
    need(out, "out");
    if (!e->outcome || i >= e->outcome->reports.size()) throw InvalidArgument("report index out of range");
    const auto& r = e->outcome->reports[i];
    *out = {r.claim.c_str(), r.pass ? 1 : 0, r.worst_margin, r.worst_index, r.slack};
  });
}

size_t topo_experiment_series_length(const topo_experiment* e) {
  return e && e->outcome && e->outcome->series ? e->outcome->series->t.size() : 0;
}

topo_status topo_experiment_series_row(const topo_experiment* e, size_t i, double row[5], int* cut_flag) {
  return guard([&] {
    need(e, "experiment");
    need(row, "row");
    if (!e->outcome || !e->outcome->series || i >= e->outcome->series->t.size()) {
      throw InvalidArgument("series index out of range");
    }
    const auto& s = *e->outcome->series;
    row[0] = s.t[i];
    row[1] = s.r[i];
    row[2] = s.r_bar[i];
    row[3] = s.ratio[i];
    row[4] = s.psi[i];
    if (cut_flag) *cut_flag = s.cut_flag[i] ? 1 : 0;
  });
}

topo_status topo_experiment_write(const topo_experiment* e, const char* dir) {
  const topo_status st = guard([&] {
    need(e, "experiment");
    need(dir, "dir");
    if (!e->outcome) throw InvalidArgument("experiment has not been run");
    topo::write_artifacts(*e->outcome, e->spec.source, dir);
  });
  return st == TOPO_ERR_CONFIG ? TOPO_ERR_IO : st;
}

int topo_run_spec(const char* path, const char* out_dir, int threads, const char* const* claims, const double* values,
                  size_t n_overrides) {
  g_last_error.clear();
  if (!path || (n_overrides && (!claims || !values))) {
    g_last_error = "configuration error: missing spec path or override arrays";
    return 2;
  }
  topo::RunOptions opt;
  opt.threads = threads < 1 ? 1 : threads;
  const auto& known = topo::known_claims();
  for (size_t i = 0; i < n_overrides; ++i) {
    if (!claims[i] || std::find(known.begin(), known.end(), claims[i]) == known.end()) {
      g_last_error = std::string("configuration error: unknown claim in slack override '") +
                     (claims[i] ? claims[i] : "") + "'";
      return 2;
    }
    if (!(values[i] >= 0.0)) {
      g_last_error = "configuration error: slack override must be non-negative";
      return 2;
    }
    opt.slack_overrides[claims[i]] = values[i];
  }
  try {
    const topo::RunOutcome out = topo::run_spec_file(path, out_dir ? out_dir : "", opt);
    g_last_error = out.message;
    return out.exit_code;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal failure: ") + e.what();
    return 3;
  }
}

size_t topo_suite_count(void) { return topo::suite_names().size(); }

const char* topo_suite_name(size_t i) {
  const auto& names = topo::suite_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

topo_status topo_run_suite(const char* name, int threads, topo_criterion_callback cb, void* user, int* exit_code) {
  return guard([&] {
    need(name, "name");
    need(exit_code, "exit_code");
    *exit_code = topo::run_suite(name, threads, [&](const topo::CriterionResult& r) { emit(r, cb, user); });
  });
}

topo_status topo_run_criterion(int id, int threads, topo_criterion_callback cb, void* user) {
  return guard([&] { emit(topo::run_criterion(id, threads), cb, user); });
}

topo_status topo_write_funcs(const char* dir, int n) {
  const topo_status st = guard([&] {
    need(dir, "dir");
    if (n < 1) throw InvalidArgument("grid must have at least one point");
    topo::write_funcs(dir, n);
  });
  return st == TOPO_ERR_CONFIG ? TOPO_ERR_IO : st;
}

}  // extern "C"
