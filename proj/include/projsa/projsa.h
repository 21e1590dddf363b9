/*
 * projsa - Copyright 2026 The projsa Authors
 * SPDX-License-Identifier: Apache-2.0
 */

/* C interface of the projsa shared library. Every function returns a
 * psa_status; on failure psa_last_error() describes the error for the
 * calling thread. Handles are opaque and owned by the caller. */

#ifndef PROJSA_H
#define PROJSA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PROJSA_BUILDING_LIBRARY)
#    define PSA_API __declspec(dllexport)
#  else
#    define PSA_API __declspec(dllimport)
#  endif
#else
#  define PSA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum psa_status {
  PSA_OK = 0,
  PSA_ERR_INVALID_ARGUMENT = 1,
  PSA_ERR_DIMENSION = 2,
  PSA_ERR_OUT_OF_RANGE = 3,
  PSA_ERR_NON_FINITE = 4,
  PSA_ERR_IO = 5,
  PSA_ERR_CONFIG = 6,
  PSA_ERR_INTERNAL = 7
} psa_status;

typedef enum psa_interpolant { PSA_STATE = 0, PSA_PROJSUM = 1 } psa_interpolant;

typedef enum psa_penalty_kind {
  PSA_PENALTY_ZERO = 0,
  PSA_PENALTY_L1 = 1,
  PSA_PENALTY_MCP = 2,
  PSA_PENALTY_SCAD = 3
} psa_penalty_kind;

typedef struct psa_box psa_box;
typedef struct psa_problem psa_problem;
typedef struct psa_trajectory psa_trajectory;

/* Library version, e.g. "0.1.0". */
PSA_API const char *psa_version(void);

/* Message of the last failed call on this thread ("" if none). */
PSA_API const char *psa_last_error(void);

/* Boxes */
PSA_API psa_status psa_box_create(const double *lower, const double *upper,
                                  size_t dim, psa_box **out);
PSA_API void psa_box_destroy(psa_box *box);
PSA_API psa_status psa_box_project(const psa_box *box, const double *x,
                                   double *out);

/* Problems, from a JSON block such as
 * {"id": "quadratic", "lower": 0, "upper": 1, "target": 2}. */
PSA_API psa_status psa_problem_from_json(const char *json, psa_problem **out);
PSA_API void psa_problem_destroy(psa_problem *problem);
PSA_API size_t psa_problem_dim(const psa_problem *problem);
PSA_API psa_status psa_problem_drift(const psa_problem *problem,
                                     const double *x, double *out);
PSA_API psa_status psa_dist_to_stationary(const psa_problem *problem,
                                          const double *x, double *out);
PSA_API psa_status psa_stationarity_residual(const psa_problem *problem,
                                             const double *x, double *out);
PSA_API psa_status psa_lyapunov_rate(const psa_problem *problem,
                                     const double *x, double *out);

/* Runs replica `replica` of a full experiment config (JSON text). */
PSA_API psa_status psa_run_config(const char *config_json, size_t replica,
                                  uint64_t seed_offset, psa_trajectory **out);
PSA_API void psa_trajectory_destroy(psa_trajectory *traj);
PSA_API size_t psa_trajectory_size(const psa_trajectory *traj);
PSA_API size_t psa_trajectory_dim(const psa_trajectory *traj);
/* Record i: step number, time, step size, and x_{n+1} into x (dim values). */
PSA_API psa_status psa_trajectory_record(const psa_trajectory *traj, size_t i,
                                         int64_t *n, double *t, double *gamma,
                                         double *x);
PSA_API psa_status psa_trajectory_write_csv(const psa_trajectory *traj,
                                            const char *path);
PSA_API psa_status psa_trajectory_read_csv(const char *path,
                                           psa_trajectory **out);

/* Diagnostics */
PSA_API psa_status psa_partial_sum_stat(const psa_trajectory *traj, int64_t N,
                                        double delta, double *out);
PSA_API psa_status psa_equicontinuity_modulus(const psa_trajectory *traj,
                                              psa_interpolant kind, int64_t N,
                                              double T, double delta,
                                              double *out);
/* floor <= 0 selects the default separation floor. */
PSA_API psa_status psa_lipschitz_estimate_Z(const psa_trajectory *traj,
                                            int64_t N, double T, double floor,
                                            double *out);
PSA_API psa_status psa_integral_residual(const psa_trajectory *traj, int64_t N,
                                         double T, double *out);
PSA_API psa_status psa_compare_sa_ode(const psa_problem *problem,
                                      const psa_trajectory *traj, int64_t N,
                                      double T, double h_ode, double *out);

/* Prox */
PSA_API psa_status psa_prox(psa_penalty_kind kind, double lambda, double shape,
                            double v, double gamma, double *out);
PSA_API psa_status psa_prox_box(psa_penalty_kind kind, double lambda,
                                double shape, double v, double gamma,
                                double lo, double hi, double *out);

/* Commands; each returns a process exit code (0 ok, 1 self-test failure,
 * 2 invalid input, 3 runtime error) and prints to stdout/stderr. */
typedef struct psa_command_options {
  const char *config_path;
  const char *trace_path;
  const char *out_dir;
  unsigned jobs;
  uint64_t seed_offset;
  int64_t instances;
  int corrupt_lambda_sign;
} psa_command_options;

PSA_API void psa_command_options_init(psa_command_options *opts);
PSA_API int psa_cmd_run(const psa_command_options *opts);
PSA_API int psa_cmd_diagnose(const psa_command_options *opts);
PSA_API int psa_cmd_prox_selftest(const psa_command_options *opts);
PSA_API int psa_cmd_ode_compare(const psa_command_options *opts);

#ifdef __cplusplus
}
#endif

#endif /* PROJSA_H */
