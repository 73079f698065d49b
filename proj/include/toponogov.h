#ifndef TOPONOGOV_H
#define TOPONOGOV_H

/* C interface to the hinge-comparison lab.
 *
 * Every fallible call returns a topo_status; on failure the message is
 * available from topo_last_error() on the same thread until the next call.
 * Points and tangent vectors are double[2] in chart coordinates. Handles are
 * opaque and owned by the caller, release them with the matching destroy.
 */

#include <stddef.h>

#if defined(_WIN32)
#define TOPO_API __declspec(dllexport)
#elif defined(__GNUC__)
#define TOPO_API __attribute__((visibility("default")))
#else
#define TOPO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  TOPO_OK = 0,
  TOPO_ERR_DOMAIN = 1,      /* argument outside the domain of the operation */
  TOPO_ERR_CONFIG = 2,      /* malformed or semantically invalid configuration */
  TOPO_ERR_NUMERICAL = 3,   /* boundary-value solve did not converge */
  TOPO_ERR_UNSUPPORTED = 4, /* claim not available for the requested curvature */
  TOPO_ERR_INVALID_ARG = 5, /* null pointer, bad index, bad enum value */
  TOPO_ERR_IO = 6,
  TOPO_ERR_INTERNAL = 7
} topo_status;

TOPO_API const char* topo_version(void);
TOPO_API const char* topo_status_name(topo_status status);
TOPO_API const char* topo_last_error(void);

/* Space forms, k in {-1, 0, 1}. */
TOPO_API topo_status topo_law_of_cosines_side(int k, double a, double b, double alpha, double* out);
TOPO_API topo_status topo_law_of_cosines_angle(int k, double a, double adjacent, double opposite, double* out);
TOPO_API topo_status topo_model_beta_bar(int k, double b, double t, double r_bar, double* out);
TOPO_API topo_status topo_isoceles_beta_bar(int k, double t, double alpha, double* out);

/* Scalar functions. */
TOPO_API topo_status topo_f_one_minus_cos(double t, double* out);
TOPO_API topo_status topo_g_cos_over(double t, double* out);
TOPO_API topo_status topo_h_cosh_over(double t, double* out);
TOPO_API topo_status topo_phi_spherical(double r, double r_bar, double* out);
TOPO_API topo_status topo_sinh_gap(double r, double r_bar, double* out);
TOPO_API topo_status topo_hyperbolic_ratio_bound_witness(double r, double r_bar, double* out);

typedef enum { TOPO_NON_DECREASING = 0, TOPO_NON_INCREASING = 1 } topo_direction;

typedef struct {
  double worst_violation;
  double worst_location;
  int samples;
  int pass;
} topo_monotone_report;

typedef double (*topo_scalar_fn)(double x, void* user);

TOPO_API topo_status topo_check_monotone(topo_scalar_fn f, void* user, double lo, double hi, int n,
                                         topo_direction direction, double slack, topo_monotone_report* out);

/* Surfaces. */
typedef struct topo_surface topo_surface;

TOPO_API topo_status topo_surface_create(const char* name, const double* params, size_t n_params,
                                         topo_surface** out);
TOPO_API void topo_surface_destroy(topo_surface* s);
TOPO_API const char* topo_surface_label(const topo_surface* s);
/* has_bound = 0 when the surface declares no lower curvature bound. */
TOPO_API topo_status topo_surface_curvature_bound(const topo_surface* s, int* has_bound, int* k);
/* out = {E, F, G}. */
TOPO_API topo_status topo_surface_metric(const topo_surface* s, const double p[2], double out[3]);
/* out[4k + 2i + j] = Gamma^k_ij. */
TOPO_API topo_status topo_surface_christoffel(const topo_surface* s, const double p[2], double out[8]);
TOPO_API topo_status topo_surface_curvature(const topo_surface* s, const double p[2], double* out);
TOPO_API topo_status topo_frame_direction(const topo_surface* s, const double p[2], double theta, double out[2]);
TOPO_API topo_status topo_angle_between(const topo_surface* s, const double p[2], const double u[2],
                                        const double v[2], double* out);
/* step <= 0 selects the default integrator step. */
TOPO_API topo_status topo_exp_map(const topo_surface* s, const double p[2], const double v[2], double step,
                                  double out[2]);

typedef enum { TOPO_DIST_ANALYTIC = 0, TOPO_DIST_SHOOTING = 1, TOPO_DIST_GRAPH = 2 } topo_distance_method;

typedef struct {
  double value;
  double initial_direction[2];
  double arrival_direction[2];
  topo_distance_method method;
  double est_error;
  int cut_suspect;
  int candidates;
} topo_distance_result;

/* Closed form when available unless force_shooting is set. */
TOPO_API topo_status topo_distance(const topo_surface* s, const double p[2], const double q[2], int force_shooting,
                                   topo_distance_result* out);
TOPO_API topo_status topo_distance_graph(const topo_surface* s, const double p[2], const double q[2],
                                         int resolution, int stencil, topo_distance_result* out);

/* Experiments described by a key = value document. */
typedef struct topo_experiment topo_experiment;

typedef struct {
  const char* claim; /* valid while the experiment handle lives */
  int pass;
  double worst_margin;
  int worst_index;
  double slack;
} topo_check_report;

TOPO_API topo_status topo_experiment_parse(const char* text, topo_experiment** out);
TOPO_API topo_status topo_experiment_load(const char* path, topo_experiment** out);
TOPO_API void topo_experiment_destroy(topo_experiment* e);
TOPO_API topo_status topo_experiment_set_slack(topo_experiment* e, const char* claim, double slack);
/* exit_code: 0 pass, 1 a check failed, 2 configuration error, 3 numerical failure. */
TOPO_API topo_status topo_experiment_run(topo_experiment* e, int threads, int* exit_code);
TOPO_API const char* topo_experiment_message(const topo_experiment* e);
TOPO_API size_t topo_experiment_report_count(const topo_experiment* e);
TOPO_API topo_status topo_experiment_report(const topo_experiment* e, size_t i, topo_check_report* out);
TOPO_API size_t topo_experiment_series_length(const topo_experiment* e);
/* row = {t, r, r_bar, ratio, psi}. */
TOPO_API topo_status topo_experiment_series_row(const topo_experiment* e, size_t i, double row[5], int* cut_flag);
TOPO_API topo_status topo_experiment_write(const topo_experiment* e, const char* dir);

/* Parses, runs and writes artifacts in one call. out_dir may be NULL to use
 * output.dir from the document. claims/values hold n_overrides slack
 * overrides. Returns the exit code 0..3; diagnostics via topo_last_error. */
TOPO_API int topo_run_spec(const char* path, const char* out_dir, int threads, const char* const* claims,
                           const double* values, size_t n_overrides);

/* Acceptance bundles. */
typedef struct {
  int id;
  const char* title;
  int pass;
  int checks_pass;
  double seconds;
  double limit_seconds;
  double worst;
  const char* detail;
} topo_criterion;

typedef void (*topo_criterion_callback)(const topo_criterion* row, void* user);

TOPO_API size_t topo_suite_count(void);
TOPO_API const char* topo_suite_name(size_t i);
TOPO_API topo_status topo_run_suite(const char* name, int threads, topo_criterion_callback cb, void* user,
                                    int* exit_code);
TOPO_API topo_status topo_run_criterion(int id, int threads, topo_criterion_callback cb, void* user);

/* funcs.csv with f_one_minus_cos, g_cos_over, h_cosh_over on n points of (0, pi). */
TOPO_API topo_status topo_write_funcs(const char* dir, int n);

#ifdef __cplusplus
}
#endif

#endif
