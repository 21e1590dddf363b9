//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROJSA_EXPERIMENT_HPP
#define PROJSA_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "projsa/engine.hpp"
#include "projsa/error.hpp"
#include "projsa/problem.hpp"
#include "projsa/schedules.hpp"

namespace projsa {

/// Exit codes shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitSelftestFailed = 1,
  kExitInvalid = 2,
  kExitRuntime = 3,
};

/// A configuration problem; the message starts with the offending field,
/// e.g. "schedule.alpha: must lie in (1/2, 1], got 0.3".
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &what)
      : Error(ErrorCode::InvalidArgument, what) {}
};

struct DiagnosticsSpec {
  std::vector<std::int64_t> N;
  double T = 1.0;
  std::vector<double> delta;
  std::optional<double> h_ode;
};

struct ExperimentConfig {
  std::string name;
  nlohmann::json problem;
  Algorithm algorithm = Algorithm::RM;
  StepSchedule schedule = StepSchedule::polynomial(1.0, 1.0);
  NoiseModel noise;
  std::optional<Vector> x0;
  std::int64_t n_steps = 1;
  std::vector<std::uint64_t> seeds;
  RecordPolicy record = RecordFull{};
  std::optional<DiagnosticsSpec> diagnostics;
  /// The parsed document, for hashing and echoing into summaries.
  nlohmann::json source;
};

/// Builds a problem from {"id": ..., parameters}. Throws ConfigError naming
/// the field under `path`.
Problem build_problem(const nlohmann::json &block,
                      const std::string &path = "problem");

ExperimentConfig parse_config(const nlohmann::json &doc);
ExperimentConfig load_config(const std::string &path);

/// FNV-1a (64 bit) of the canonical dump, as 16 hex digits.
std::string config_hash(const nlohmann::json &doc);

/// Runs replica i with seed seeds[i] + seed_offset on stream 0.
Trajectory run_replica(const ExperimentConfig &cfg, const Problem &problem,
                       std::size_t replica, std::uint64_t seed_offset,
                       const StepObserver &observer = {});

/// (H + R) d for the configured problem and noise.
double lipschitz_ceiling(const Problem &problem, const NoiseModel &noise);

struct CommandOptions {
  std::string config_path;
  std::string trace_path;
  std::string out_dir = ".";
  unsigned jobs = 1;
  std::uint64_t seed_offset = 0;
  /// prox-selftest only.
  std::int64_t instances = 10000;
  bool corrupt_lambda_sign = false;
};

int cmd_run(const CommandOptions &opts, std::ostream &out, std::ostream &err);
int cmd_diagnose(const CommandOptions &opts, std::ostream &out, std::ostream &err);
int cmd_prox_selftest(const CommandOptions &opts, std::ostream &out,
                      std::ostream &err);
int cmd_ode_compare(const CommandOptions &opts, std::ostream &out,
                    std::ostream &err);

}  // namespace projsa

#endif  // PROJSA_EXPERIMENT_HPP
