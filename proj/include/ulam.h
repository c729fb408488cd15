/* C interface of the stabilization library: reconstructs exact solutions of
 * f(phi(x)) = g(x) . f(x) on complete metric groups from perturbed approximate
 * solutions and emits machine-checkable error certificates.
 *
 * All objects are opaque handles owned by the library; every fallible call
 * returns a ulam_status and leaves a thread-local message retrievable with
 * ulam_last_error(). Strings returned through char** are heap-allocated and
 * must be released with ulam_string_free().
 */
#ifndef ULAM_H
#define ULAM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define ULAM_VERSION "1.0.0"

typedef enum ulam_status {
  ULAM_OK = 0,
  ULAM_ERR_INVALID_ARGUMENT = 1,
  ULAM_ERR_PARSE = 2,    /* malformed configuration text */
  ULAM_ERR_SEMANTIC = 3, /* well-formed but inconsistent configuration */
  ULAM_ERR_DOMAIN = 4,   /* a point or orbit left the equation's domain */
  ULAM_ERR_IO = 5,
  ULAM_ERR_INTERNAL = 6
} ulam_status;

typedef enum ulam_mode {
  ULAM_MODE_STABILIZE = 0,
  ULAM_MODE_VERIFY = 1,
  ULAM_MODE_DEMO = 2
} ulam_mode;

typedef enum ulam_point_status {
  ULAM_POINT_CONVERGED = 0,
  ULAM_POINT_DIVERGED = 1,
  ULAM_POINT_BUDGET_VIOLATED = 2,
  ULAM_POINT_MAX_ITERATIONS = 3
} ulam_point_status;

typedef enum ulam_tail_strategy {
  ULAM_TAIL_NONE = 0,
  ULAM_TAIL_CLOSED_FORM = 1,
  ULAM_TAIL_ZERO = 2,
  ULAM_TAIL_GEOMETRIC = 3
} ulam_tail_strategy;

/* Opaque run configuration (equation, perturbation, budget, points, runtime
 * knobs). Immutable while a run is in flight. */
typedef struct ulam_config ulam_config;

const char* ulam_version(void);
const char* ulam_status_name(ulam_status status);

/* Message describing the most recent failure on this thread. Valid until the
 * next failing call on the same thread. */
const char* ulam_last_error(void);

/* Strict parse of configuration text / file. On success *out owns the handle. */
ulam_status ulam_config_parse(const char* text, ulam_config** out);
ulam_status ulam_config_parse_file(const char* path, ulam_config** out);

/* Bundled flagship scenario ("digamma"). */
ulam_status ulam_config_demo(const char* equation_name, ulam_config** out);

ulam_status ulam_config_set_tol(ulam_config* config, double tol);
ulam_status ulam_config_set_max_iterations(ulam_config* config, long long max_iterations);
ulam_status ulam_config_set_points(ulam_config* config, const double* points, size_t count);
ulam_status ulam_config_set_threads(ulam_config* config, int threads);

/* mode_explicit reports whether the configuration text pinned the mode. */
ulam_status ulam_config_get_mode(const ulam_config* config, ulam_mode* mode,
                                 int* mode_explicit);
ulam_status ulam_config_set_mode(ulam_config* config, ulam_mode mode);

void ulam_config_free(ulam_config* config);

/* Executes the batch: one certificate row per configured point.
 * csv_out receives the full CSV document (header
 * x,f,f0,dist,phi_hat,strategy,iterations,last_step,residual,status),
 * summary_out a human-readable digest. exit_code is 0 when every row
 * converged and passed the certificate re-check, 2 otherwise. */
ulam_status ulam_run(const ulam_config* config, char** csv_out, char** summary_out,
                     int* exit_code);

void ulam_string_free(char* s);

/* Single-point result for real-carried configurations. f and f0 are carrier
 * coordinates (the value for the additive reals, its natural log for the
 * multiplicative positive reals). */
typedef struct ulam_point_result {
  double x;
  double f;
  double f0;
  double distance;        /* d(f(x), f0(x)) */
  double certified_bound; /* certified bound on that distance */
  double last_step;
  double residual;        /* equation residual of the reconstructed value */
  long long iterations;
  int status;             /* ulam_point_status */
  int tail_strategy;      /* ulam_tail_strategy */
} ulam_point_result;

/* Stabilizes one point of the configured problem. Word-carried configurations
 * have no scalar representation here; use ulam_run for those. */
ulam_status ulam_stabilize_point(const ulam_config* config, double x,
                                 ulam_point_result* out);

/* Reference special functions; NaN on domain error (x <= 0). */
double ulam_digamma(double x);
double ulam_log_gamma(double x);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ULAM_H */
