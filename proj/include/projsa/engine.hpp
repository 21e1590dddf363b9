//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROJSA_ENGINE_HPP
#define PROJSA_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "projsa/geometry.hpp"
#include "projsa/problem.hpp"
#include "projsa/rng.hpp"
#include "projsa/schedules.hpp"

namespace projsa {

enum class Algorithm { RM, ProxV1, ProxV2 };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string &s);

/// One step n: x_prev = x_n, x = x_{n+1}, hval = h(x_n), t = t_n, and
/// x = x_prev + gamma (hval + e + r) - P.
struct IterateRecord {
  std::int64_t n = 0;
  double t = 0.0;
  double gamma = 0.0;
  Vector x_prev;
  Vector x;
  Vector e;
  Vector r;
  Vector hval;
  Vector P;

  friend bool operator==(const IterateRecord &, const IterateRecord &) = default;
};

struct RecordFull {};
/// Every stride-th step, plus the first `head` and last `tail` steps in full.
struct RecordThin {
  std::int64_t stride = 1;
  std::int64_t head = 0;
  std::int64_t tail = 0;
};
/// First `size` and last `size` steps; everything else only through the
/// running aggregates.
struct RecordWindow {
  std::int64_t size = 0;
};
using RecordPolicy = std::variant<RecordFull, RecordThin, RecordWindow>;

/// Running aggregates over every step, recorded or not.
struct RunAggregates {
  std::int64_t steps = 0;
  std::int64_t projected_steps = 0;
  double max_projection = 0.0;
  Vector sum_projection;
  Vector final_x;
  double final_t = 0.0;
};

struct TrajectoryMeta {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string problem_id;
  std::string schedule;
  std::string noise;
  Algorithm algorithm = Algorithm::RM;
};

/// Recorded steps stored column-wise. Records are ordered by n; gaps appear
/// only under thinning or windowing.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return n_.size(); }
  bool empty() const noexcept { return n_.empty(); }

  void reserve(std::size_t count);
  void push_back(const IterateRecord &rec);

  std::int64_t n(std::size_t i) const { return n_[i]; }
  double t(std::size_t i) const { return t_[i]; }
  double gamma(std::size_t i) const { return gamma_[i]; }
  std::span<const double> x_prev(std::size_t i) const { return row(x_prev_, i); }
  std::span<const double> x(std::size_t i) const { return row(x_, i); }
  std::span<const double> e(std::size_t i) const { return row(e_, i); }
  std::span<const double> r(std::size_t i) const { return row(r_, i); }
  std::span<const double> hval(std::size_t i) const { return row(h_, i); }
  std::span<const double> P(std::size_t i) const { return row(P_, i); }

  IterateRecord record(std::size_t i) const;

  /// Index of the record with step number n, or -1.
  std::ptrdiff_t find(std::int64_t n) const;

  /// Number of consecutive step numbers starting at index i.
  std::size_t contiguous_from(std::size_t i) const;

  TrajectoryMeta meta;
  RunAggregates aggregates;
  Vector x_init;

  friend bool operator==(const Trajectory &a, const Trajectory &b);

 private:
  std::span<const double> row(const Vector &v, std::size_t i) const {
    return {v.data() + i * dim_, dim_};
  }

  std::size_t dim_ = 0;
  std::vector<std::int64_t> n_;
  Vector t_, gamma_;
  Vector x_prev_, x_, e_, r_, h_, P_;
};

struct StepResult {
  IterateRecord record;
  RngState rng;
};

/// Projected Robbins-Monro step: x_{n+1} = Pi_K(x_n + gamma_n (h + e + r)).
StepResult step_rm(const Problem &problem, std::span<const double> x,
                   std::int64_t n, const StepSchedule &schedule,
                   const NoiseModel &noise, const RngState &rng);

/// x_k = prox_{gamma (g + I_K)}(x_{k-1} - gamma H_k).
StepResult step_prox_v1(const Problem &problem, std::span<const double> x,
                        std::int64_t k, const StepSchedule &schedule,
                        const NoiseModel &noise, const RngState &rng);

/// x_k = Pi_K(prox_{gamma g}(x_{k-1} - gamma H_k)).
StepResult step_prox_v2(const Problem &problem, std::span<const double> x,
                        std::int64_t k, const StepSchedule &schedule,
                        const NoiseModel &noise, const RngState &rng);

/// Called after every step with the full record, recorded or not.
using StepObserver = std::function<void(const IterateRecord &)>;

struct RunOptions {
  Algorithm algorithm = Algorithm::RM;
  std::int64_t n_steps = 1;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  Vector x0;
  RecordPolicy policy = RecordFull{};
  StepObserver observer;
};

/// Runs n_steps iterations from Pi_K(x0). Deterministic in (seed, stream).
Trajectory run(const Problem &problem, const StepSchedule &schedule,
               const NoiseModel &noise, const RunOptions &opts);

}  // namespace projsa

#endif  // PROJSA_ENGINE_HPP
