//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROJSA_SCHEDULES_HPP
#define PROJSA_SCHEDULES_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "projsa/geometry.hpp"
#include "projsa/rng.hpp"

namespace projsa {

// ---------------------------------------------------------------------------
// Step sizes
// ---------------------------------------------------------------------------

struct Polynomial {
  double gamma0;
  double alpha;
};

struct Table {
  std::vector<double> values;
};

/// gamma0 up to step n0, then gamma0 * (n / n0)^-alpha.
struct ConstantThenPolynomial {
  double gamma0;
  std::int64_t n0;
  double alpha;
};

class StepSchedule {
 public:
  using Kind = std::variant<Polynomial, Table, ConstantThenPolynomial>;

  /// Validates the parameters. Polynomial exponents must lie in (1/2, 1].
  explicit StepSchedule(Kind kind);

  static StepSchedule polynomial(double gamma0, double alpha) {
    return StepSchedule(Polynomial{gamma0, alpha});
  }
  static StepSchedule table(std::vector<double> values) {
    return StepSchedule(Table{std::move(values)});
  }

  const Kind &kind() const noexcept { return kind_; }

  /// True for the kinds whose parameters guarantee sum(gamma) = inf and
  /// sum(gamma^2) < inf.
  bool certified() const noexcept;

  /// Last step index the schedule can produce, or -1 if unbounded.
  std::int64_t horizon_limit() const noexcept;

  double gamma(std::int64_t n) const;

 private:
  Kind kind_;
};

double gamma(const StepSchedule &schedule, std::int64_t n);

/// t_n = sum_{k=1}^n gamma_k, accumulated left to right; t_0 = 0.
double cumulative_time(const StepSchedule &schedule, std::int64_t n);

// ---------------------------------------------------------------------------
// Noise
// ---------------------------------------------------------------------------

struct NoNoise {};
struct GaussianIID {
  double sigma;
};
struct UniformIID {
  double halfwidth;
};
/// Gaussian with standard deviation sigma_max * scale(x), scale clipped to
/// [0, 1]. The default scale is 1 / (1 + |x|^2).
struct ScaledGaussian {
  double sigma_max;
  std::function<double(std::span<const double>)> scale;
};

struct NoBias {};
/// r_n = c * n^-beta.
struct PowerBias {
  Vector c;
  double beta;
};
/// r_n^i = c_i cos(x_i) n^-beta: state dependent, bounded by |c|, decaying
/// along the envelope n^-beta.
struct VanishingStateBias {
  Vector c;
  double beta;
};

using ZeroMeanPart = std::variant<NoNoise, GaussianIID, UniformIID, ScaledGaussian>;
using BiasPart = std::variant<NoBias, PowerBias, VanishingStateBias>;

class NoiseModel {
 public:
  NoiseModel() = default;
  NoiseModel(ZeroMeanPart e, BiasPart r);

  static NoiseModel none() { return {}; }

  const ZeroMeanPart &e_part() const noexcept { return e_; }
  const BiasPart &r_part() const noexcept { return r_; }

  /// Bound R with |r_n| <= R for every n.
  double bias_bound() const noexcept { return bound_; }

  bool has_zero_mean_part() const noexcept;
  bool has_bias() const noexcept;

  /// Deterministic upper envelope of |r_n|.
  double bias_envelope(std::int64_t n) const;

 private:
  ZeroMeanPart e_ = NoNoise{};
  BiasPart r_ = NoBias{};
  double bound_ = 0.0;
};

struct NoiseSample {
  Vector e;
  Vector r;
  RngState rng;
};

/// (e_n, r_n) for step n at state x. Pure in (model, n, x, rng).
NoiseSample sample_noise(const NoiseModel &model, std::int64_t n,
                         std::span<const double> x, const RngState &rng);

/// Allocation-free variant used by the engine's inner loop.
void sample_noise_into(const NoiseModel &model, std::int64_t n,
                       std::span<const double> x, RngState &rng,
                       std::span<double> e, std::span<double> r);

// ---------------------------------------------------------------------------
// Assumption checks
// ---------------------------------------------------------------------------

struct AssumptionCheck {
  std::string name;
  double value;
  bool pass;
  std::string note;
};

struct AssumptionReport {
  std::int64_t horizon;
  double t_horizon;
  double gamma_horizon;
  double sum_gamma_sq;
  double max_late_bias;
  std::vector<AssumptionCheck> checks;
  std::vector<std::string> warnings;

  bool all_pass() const;
};

/// Finite-horizon indicators for sum(gamma) = inf, gamma -> 0,
/// sum(gamma^2) < inf and |r_n| -> 0. Each is a doubling test comparing
/// [h/2, h] against [h/4, h/2].
AssumptionReport validate_assumptions(const StepSchedule &schedule,
                                      const NoiseModel &model,
                                      std::int64_t horizon);

}  // namespace projsa

#endif  // PROJSA_SCHEDULES_HPP
