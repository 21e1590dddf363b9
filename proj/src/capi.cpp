//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "projsa/projsa.h"

#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "projsa/diagnostics.hpp"
#include "projsa/experiment.hpp"
#include "projsa/odeflow.hpp"
#include "projsa/trace_io.hpp"
#include "projsa/version.hpp"

struct psa_box {
  projsa::Box box;
};
struct psa_problem {
  projsa::Problem problem;
};
struct psa_trajectory {
  projsa::Trajectory traj;
};

namespace {

thread_local std::string g_last_error;

psa_status status_of(projsa::ErrorCode code) {
  switch (code) {
    case projsa::ErrorCode::InvalidArgument: return PSA_ERR_INVALID_ARGUMENT;
    case projsa::ErrorCode::DimensionMismatch: return PSA_ERR_DIMENSION;
    case projsa::ErrorCode::OutOfRange: return PSA_ERR_OUT_OF_RANGE;
    case projsa::ErrorCode::NonFinite: return PSA_ERR_NON_FINITE;
    case projsa::ErrorCode::Io: return PSA_ERR_IO;
  }
  return PSA_ERR_INTERNAL;
}

template <class F>
psa_status guard(F &&f) {
  try {
    f();
    g_last_error.clear();
    return PSA_OK;
  } catch (const projsa::ConfigError &e) {
    g_last_error = e.what();
    return PSA_ERR_CONFIG;
  } catch (const projsa::Error &e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return PSA_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PSA_ERR_INTERNAL;
  }
}

void need(const void *p, const char *what) {
  if (!p) projsa::fail(projsa::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

std::span<const double> in(const double *p, std::size_t n) { return {p, n}; }

projsa::Penalty make_penalty(psa_penalty_kind kind, double lambda, double shape) {
  switch (kind) {
    case PSA_PENALTY_ZERO: return projsa::Penalty::zero();
    case PSA_PENALTY_L1: return projsa::Penalty::l1(lambda);
    case PSA_PENALTY_MCP: return projsa::Penalty::mcp(lambda, shape);
    case PSA_PENALTY_SCAD: return projsa::Penalty::scad(lambda, shape);
  }
  projsa::fail(projsa::ErrorCode::InvalidArgument, "unknown penalty kind");
}

projsa::CommandOptions convert(const psa_command_options *o) {
  need(o, "options");
  projsa::CommandOptions c;
  if (o->config_path) c.config_path = o->config_path;
  if (o->trace_path) c.trace_path = o->trace_path;
  if (o->out_dir) c.out_dir = o->out_dir;
  c.jobs = o->jobs == 0 ? 1 : o->jobs;
  c.seed_offset = o->seed_offset;
  c.instances = o->instances;
  c.corrupt_lambda_sign = o->corrupt_lambda_sign != 0;
  return c;
}

template <class F>
int command(const psa_command_options *opts, F &&f) {
  std::optional<projsa::CommandOptions> c;
  const psa_status st = guard([&] { c = convert(opts); });
  if (st != PSA_OK) {
    std::cerr << "error: " << g_last_error << '\n';
    return projsa::kExitInvalid;
  }
  try {
    return f(*c, std::cout, std::cerr);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return projsa::kExitRuntime;
  }
}

}  // namespace

extern "C" {

const char *psa_version(void) { return PROJSA_VERSION_STRING; }

const char *psa_last_error(void) { return g_last_error.c_str(); }

psa_status psa_box_create(const double *lower, const double *upper, size_t dim,
                          psa_box **out) {
  return guard([&] {
    need(lower, "lower");
    need(upper, "upper");
    need(out, "out");
    *out = new psa_box{projsa::Box(projsa::Vector(lower, lower + dim),
                                   projsa::Vector(upper, upper + dim))};
  });
}

void psa_box_destroy(psa_box *box) { delete box; }

psa_status psa_box_project(const psa_box *box, const double *x, double *out) {
  return guard([&] {
    need(box, "box");
    need(x, "x");
    need(out, "out");
    const auto p = projsa::project_box(in(x, box->box.dim()), box->box);
    std::copy(p.begin(), p.end(), out);
  });
}

psa_status psa_problem_from_json(const char *json, psa_problem **out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error &e) {
      throw projsa::ConfigError(std::string("problem: not valid JSON: ") + e.what());
    }
    *out = new psa_problem{projsa::build_problem(doc)};
  });
}

void psa_problem_destroy(psa_problem *problem) { delete problem; }

size_t psa_problem_dim(const psa_problem *problem) {
  return problem ? problem->problem.dim() : 0;
}

psa_status psa_problem_drift(const psa_problem *problem, const double *x,
                             double *out) {
  return guard([&] {
    need(problem, "problem");
    need(x, "x");
    need(out, "out");
    const std::size_t d = problem->problem.dim();
    problem->problem.drift(in(x, d), std::span<double>(out, d));
  });
}

psa_status psa_dist_to_stationary(const psa_problem *problem, const double *x,
                                  double *out) {
  return guard([&] {
    need(problem, "problem");
    need(x, "x");
    need(out, "out");
    *out = projsa::dist_to_stationary(problem->problem, in(x, problem->problem.dim()));
  });
}

psa_status psa_stationarity_residual(const psa_problem *problem, const double *x,
                                     double *out) {
  return guard([&] {
    need(problem, "problem");
    need(x, "x");
    need(out, "out");
    *out = projsa::stationarity_residual(problem->problem, in(x, problem->problem.dim()));
  });
}

psa_status psa_lyapunov_rate(const psa_problem *problem, const double *x,
                             double *out) {
  return guard([&] {
    need(problem, "problem");
    need(x, "x");
    need(out, "out");
    *out = projsa::lyapunov_rate(problem->problem, in(x, problem->problem.dim()));
  });
}

psa_status psa_run_config(const char *config_json, size_t replica,
                          uint64_t seed_offset, psa_trajectory **out) {
  return guard([&] {
    need(config_json, "config_json");
    need(out, "out");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::parse_error &e) {
      throw projsa::ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    const projsa::ExperimentConfig cfg = projsa::parse_config(doc);
    if (replica >= cfg.seeds.size()) {
      projsa::fail(projsa::ErrorCode::OutOfRange, "replica index out of range");
    }
    const projsa::Problem problem = projsa::build_problem(cfg.problem);
    auto t = std::make_unique<psa_trajectory>();
    t->traj = projsa::run_replica(cfg, problem, replica, seed_offset);
    *out = t.release();
  });
}

void psa_trajectory_destroy(psa_trajectory *traj) { delete traj; }

size_t psa_trajectory_size(const psa_trajectory *traj) {
  return traj ? traj->traj.size() : 0;
}

size_t psa_trajectory_dim(const psa_trajectory *traj) {
  return traj ? traj->traj.dim() : 0;
}

psa_status psa_trajectory_record(const psa_trajectory *traj, size_t i, int64_t *n,
                                 double *t, double *gamma, double *x) {
  return guard([&] {
    need(traj, "traj");
    if (i >= traj->traj.size()) {
      projsa::fail(projsa::ErrorCode::OutOfRange, "record index out of range");
    }
    if (n) *n = traj->traj.n(i);
    if (t) *t = traj->traj.t(i);
    if (gamma) *gamma = traj->traj.gamma(i);
    if (x) {
      auto row = traj->traj.x(i);
      std::copy(row.begin(), row.end(), x);
    }
  });
}

psa_status psa_trajectory_write_csv(const psa_trajectory *traj, const char *path) {
  return guard([&] {
    need(traj, "traj");
    need(path, "path");
    projsa::write_trace_file(path, traj->traj);
  });
}

psa_status psa_trajectory_read_csv(const char *path, psa_trajectory **out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    auto t = std::make_unique<psa_trajectory>();
    t->traj = projsa::read_trace_file(path);
    *out = t.release();
  });
}

psa_status psa_partial_sum_stat(const psa_trajectory *traj, int64_t N,
                                double delta, double *out) {
  return guard([&] {
    need(traj, "traj");
    need(out, "out");
    *out = projsa::partial_sum_stat(traj->traj, N, delta);
  });
}

psa_status psa_equicontinuity_modulus(const psa_trajectory *traj,
                                      psa_interpolant kind, int64_t N, double T,
                                      double delta, double *out) {
  return guard([&] {
    need(traj, "traj");
    need(out, "out");
    const auto k = kind == PSA_PROJSUM ? projsa::InterpolantKind::ProjSum
                                       : projsa::InterpolantKind::State;
    *out = projsa::equicontinuity_modulus(traj->traj, k, N, T, delta);
  });
}

psa_status psa_lipschitz_estimate_Z(const psa_trajectory *traj, int64_t N,
                                    double T, double floor, double *out) {
  return guard([&] {
    need(traj, "traj");
    need(out, "out");
    std::optional<double> f;
    if (floor > 0.0) f = floor;
    *out = projsa::lipschitz_estimate_Z(traj->traj, N, T, 0.0, f).estimate;
  });
}

psa_status psa_integral_residual(const psa_trajectory *traj, int64_t N, double T,
                                 double *out) {
  return guard([&] {
    need(traj, "traj");
    need(out, "out");
    *out = projsa::integral_residual(traj->traj, N, T);
  });
}

psa_status psa_compare_sa_ode(const psa_problem *problem, const psa_trajectory *traj,
                              int64_t N, double T, double h_ode, double *out) {
  return guard([&] {
    need(problem, "problem");
    need(traj, "traj");
    need(out, "out");
    *out = projsa::compare_sa_ode(problem->problem, traj->traj, N, T, h_ode);
  });
}

psa_status psa_prox(psa_penalty_kind kind, double lambda, double shape, double v,
                    double gamma, double *out) {
  return guard([&] {
    need(out, "out");
    const double vv[1] = {v};
    *out = projsa::prox_penalty(make_penalty(kind, lambda, shape), vv, gamma)[0];
  });
}

psa_status psa_prox_box(psa_penalty_kind kind, double lambda, double shape,
                        double v, double gamma, double lo, double hi, double *out) {
  return guard([&] {
    need(out, "out");
    const double vv[1] = {v};
    const projsa::Box box({lo}, {hi});
    *out = projsa::prox_penalty_box(make_penalty(kind, lambda, shape), vv, gamma, box)[0];
  });
}

void psa_command_options_init(psa_command_options *opts) {
  if (!opts) return;
  opts->config_path = nullptr;
  opts->trace_path = nullptr;
  opts->out_dir = ".";
  opts->jobs = 1;
  opts->seed_offset = 0;
  opts->instances = 10000;
  opts->corrupt_lambda_sign = 0;
}

int psa_cmd_run(const psa_command_options *opts) {
  return command(opts, projsa::cmd_run);
}

int psa_cmd_diagnose(const psa_command_options *opts) {
  return command(opts, projsa::cmd_diagnose);
}

int psa_cmd_prox_selftest(const psa_command_options *opts) {
  return command(opts, projsa::cmd_prox_selftest);
}

int psa_cmd_ode_compare(const psa_command_options *opts) {
  return command(opts, projsa::cmd_ode_compare);
}

}  // extern "C"
