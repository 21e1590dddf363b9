//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "projsa/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "projsa/error.hpp"

namespace projsa {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_alpha(double alpha) {
  if (!(alpha > 0.5 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "schedule.alpha: must lie in (1/2, 1], got " << alpha;
    fail(ErrorCode::InvalidArgument, os.str());
  }
}

void check_gamma0(double gamma0) {
  if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
    fail(ErrorCode::InvalidArgument, "schedule.gamma0: must be positive");
  }
}

}  // namespace

StepSchedule::StepSchedule(Kind kind) : kind_(std::move(kind)) {
  std::visit(overloaded{
                 [](const Polynomial &p) {
                   check_gamma0(p.gamma0);
                   check_alpha(p.alpha);
                 },
                 [](const Table &t) {
                   if (t.values.empty()) {
                     fail(ErrorCode::InvalidArgument,
                          "schedule.values: table must not be empty");
                   }
                   for (double g : t.values) {
                     if (!(g > 0.0) || !std::isfinite(g)) {
                       fail(ErrorCode::InvalidArgument,
                            "schedule.values: every step must be positive");
                     }
                   }
                 },
                 [](const ConstantThenPolynomial &p) {
                   check_gamma0(p.gamma0);
                   check_alpha(p.alpha);
                   if (p.n0 < 1) {
                     fail(ErrorCode::InvalidArgument,
                          "schedule.n0: must be at least 1");
                   }
                 },
             },
             kind_);
}

bool StepSchedule::certified() const noexcept {
  return !std::holds_alternative<Table>(kind_);
}

std::int64_t StepSchedule::horizon_limit() const noexcept {
  if (const auto *t = std::get_if<Table>(&kind_)) {
    return static_cast<std::int64_t>(t->values.size());
  }
  return -1;
}

double StepSchedule::gamma(std::int64_t n) const {
  if (n < 1) {
    fail(ErrorCode::InvalidArgument, "gamma: step index must be >= 1");
  }
  return std::visit(
      overloaded{
          [n](const Polynomial &p) {
            return p.alpha == 1.0 ? p.gamma0 / static_cast<double>(n)
                                  : p.gamma0 * std::pow(static_cast<double>(n),
                                                        -p.alpha);
          },
          [n](const Table &t) {
            if (static_cast<std::size_t>(n) > t.values.size()) {
              fail(ErrorCode::OutOfRange,
                   "gamma: step " + std::to_string(n) +
                       " is past the end of the table (" +
                       std::to_string(t.values.size()) + " entries)");
            }
            return t.values[static_cast<std::size_t>(n - 1)];
          },
          [n](const ConstantThenPolynomial &p) {
            if (n <= p.n0) return p.gamma0;
            return p.gamma0 * std::pow(static_cast<double>(n) /
                                           static_cast<double>(p.n0),
                                       -p.alpha);
          },
      },
      kind_);
}

double gamma(const StepSchedule &schedule, std::int64_t n) {
  return schedule.gamma(n);
}

double cumulative_time(const StepSchedule &schedule, std::int64_t n) {
  double t = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) t += schedule.gamma(k);
  return t;
}

// ---------------------------------------------------------------------------

NoiseModel::NoiseModel(ZeroMeanPart e, BiasPart r)
    : e_(std::move(e)), r_(std::move(r)) {
  std::visit(overloaded{
                 [](const NoNoise &) {},
                 [](const GaussianIID &g) {
                   if (!(g.sigma >= 0.0) || !std::isfinite(g.sigma)) {
                     fail(ErrorCode::InvalidArgument,
                          "noise.e.sigma: must be nonnegative");
                   }
                 },
                 [](const UniformIID &u) {
                   if (!(u.halfwidth >= 0.0) || !std::isfinite(u.halfwidth)) {
                     fail(ErrorCode::InvalidArgument,
                          "noise.e.halfwidth: must be nonnegative");
                   }
                 },
                 [](const ScaledGaussian &s) {
                   if (!(s.sigma_max >= 0.0) || !std::isfinite(s.sigma_max)) {
                     fail(ErrorCode::InvalidArgument,
                          "noise.e.sigma_max: must be nonnegative");
                   }
                 },
             },
             e_);
  if (auto *s = std::get_if<ScaledGaussian>(&e_); s && !s->scale) {
    s->scale = [](std::span<const double> x) {
      double q = 0.0;
      for (double v : x) q += v * v;
      return 1.0 / (1.0 + q);
    };
  }
  auto check_bias = [](const Vector &c, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
      fail(ErrorCode::InvalidArgument, "noise.r.beta: must be positive");
    }
    for (double v : c) {
      if (!std::isfinite(v)) {
        fail(ErrorCode::InvalidArgument, "noise.r.c: entries must be finite");
      }
    }
    return norm2(c);
  };
  bound_ = std::visit(
      overloaded{
          [](const NoBias &) { return 0.0; },
          [&](const PowerBias &p) { return check_bias(p.c, p.beta); },
          [&](const VanishingStateBias &p) { return check_bias(p.c, p.beta); },
      },
      r_);
}

bool NoiseModel::has_zero_mean_part() const noexcept {
  return !std::holds_alternative<NoNoise>(e_);
}

bool NoiseModel::has_bias() const noexcept {
  return !std::holds_alternative<NoBias>(r_);
}

double NoiseModel::bias_envelope(std::int64_t n) const {
  if (n < 1) fail(ErrorCode::InvalidArgument, "bias_envelope: n must be >= 1");
  return std::visit(
      overloaded{
          [](const NoBias &) { return 0.0; },
          [&](const PowerBias &p) {
            return bound_ * std::pow(static_cast<double>(n), -p.beta);
          },
          [&](const VanishingStateBias &p) {
            return bound_ * std::pow(static_cast<double>(n), -p.beta);
          },
      },
      r_);
}

namespace {

double decay(std::int64_t n, double beta) {
  return beta == 1.0 ? 1.0 / static_cast<double>(n)
                     : std::pow(static_cast<double>(n), -beta);
}

void check_bias_dim(const Vector &c, std::size_t d) {
  if (c.size() != d) {
    fail(ErrorCode::DimensionMismatch,
         "noise.r.c: expected " + std::to_string(d) + " entries, got " +
             std::to_string(c.size()));
  }
}

}  // namespace

void sample_noise_into(const NoiseModel &model, std::int64_t n,
                       std::span<const double> x, RngState &rng,
                       std::span<double> e, std::span<double> r) {
  const std::size_t d = x.size();
  const auto step = static_cast<std::uint64_t>(n);
  std::visit(overloaded{
                 [&](const NoNoise &) { std::fill(e.begin(), e.end(), 0.0); },
                 [&](const GaussianIID &g) {
                   for (std::size_t i = 0; i < d; ++i) {
                     e[i] = g.sigma * rng.normal(step, i);
                   }
                   rng.draws += 2 * d;
                 },
                 [&](const UniformIID &u) {
                   for (std::size_t i = 0; i < d; ++i) {
                     e[i] = u.halfwidth * (2.0 * rng.uniform(step, i) - 1.0);
                   }
                   rng.draws += d;
                 },
                 [&](const ScaledGaussian &s) {
                   const double sigma =
                       s.sigma_max * std::clamp(s.scale(x), 0.0, 1.0);
                   for (std::size_t i = 0; i < d; ++i) {
                     e[i] = sigma * rng.normal(step, i);
                   }
                   rng.draws += 2 * d;
                 },
             },
             model.e_part());
  std::visit(overloaded{
                 [&](const NoBias &) { std::fill(r.begin(), r.end(), 0.0); },
                 [&](const PowerBias &p) {
                   check_bias_dim(p.c, d);
                   const double k = decay(n, p.beta);
                   for (std::size_t i = 0; i < d; ++i) r[i] = p.c[i] * k;
                 },
                 [&](const VanishingStateBias &p) {
                   check_bias_dim(p.c, d);
                   const double k = decay(n, p.beta);
                   for (std::size_t i = 0; i < d; ++i) {
                     r[i] = p.c[i] * std::cos(x[i]) * k;
                   }
                 },
             },
             model.r_part());
}

NoiseSample sample_noise(const NoiseModel &model, std::int64_t n,
                         std::span<const double> x, const RngState &rng) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "sample_noise: n must be >= 1");
  NoiseSample out{Vector(x.size()), Vector(x.size()), rng};
  sample_noise_into(model, n, x, out.rng, out.e, out.r);
  return out;
}

// ---------------------------------------------------------------------------

bool AssumptionReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AssumptionCheck &c) { return c.pass; });
}

AssumptionReport validate_assumptions(const StepSchedule &schedule,
                                      const NoiseModel &model,
                                      std::int64_t horizon) {
  if (horizon < 10) {
    fail(ErrorCode::InvalidArgument,
         "validate_assumptions: horizon must be at least 10");
  }
  AssumptionReport rep{};
  if (const auto limit = schedule.horizon_limit();
      limit >= 0 && horizon > limit) {
    if (limit < 10) {
      fail(ErrorCode::InvalidArgument,
           "validate_assumptions: table has fewer than 10 steps");
    }
    rep.warnings.push_back("horizon clipped to the table length " +
                           std::to_string(limit));
    horizon = limit;
  }
  if (!schedule.certified()) {
    rep.warnings.push_back(
        "table schedule: conditions on gamma cannot be certified, only "
        "indicated on the finite horizon");
  }
  rep.horizon = horizon;

  const std::int64_t h4 = horizon / 4;
  const std::int64_t h2 = horizon / 2;
  double t = 0.0, s2 = 0.0;
  double t_h4 = 0.0, t_h2 = 0.0, s2_h4 = 0.0, s2_h2 = 0.0;
  for (std::int64_t n = 1; n <= horizon; ++n) {
    const double g = schedule.gamma(n);
    t += g;
    s2 += g * g;
    if (n == h4) {
      t_h4 = t;
      s2_h4 = s2;
    }
    if (n == h2) {
      t_h2 = t;
      s2_h2 = s2;
    }
  }
  rep.t_horizon = t;
  rep.gamma_horizon = schedule.gamma(horizon);
  rep.sum_gamma_sq = s2;

  // Divergent sum: the increment over [h/2, h] must not collapse relative to
  // the one over [h/4, h/2]; a tail like n^-alpha shrinks by 2^(1 - alpha).
  const double dt_late = t - t_h2;
  const double dt_early = t_h2 - t_h4;
  rep.checks.push_back({"sum_gamma_diverges", dt_late,
                        dt_late > 0.9 * dt_early,
                        "t_h - t_{h/2} > 0.9 (t_{h/2} - t_{h/4})"});

  const double g_mid = schedule.gamma(h2);
  rep.checks.push_back({"gamma_vanishes", rep.gamma_horizon,
                        rep.gamma_horizon <= 0.9 * g_mid,
                        "gamma_h <= 0.9 gamma_{h/2}"});

  const double sq_late = s2 - s2_h2;
  const double sq_early = s2_h2 - s2_h4;
  rep.checks.push_back({"sum_gamma_sq_bounded", s2,
                        sq_late <= 0.98 * sq_early,
                        "tail mass of gamma^2 shrinks per doubling"});

  double early = 0.0, late = 0.0;
  for (std::int64_t n = 1; n <= horizon; ++n) {
    const double env = model.bias_envelope(n);
    (n < h2 ? early : late) = std::max(n < h2 ? early : late, env);
  }
  rep.max_late_bias = late;
  rep.checks.push_back({"bias_vanishes", late,
                        late == 0.0 || late <= 0.5 * early,
                        "max |r_n| on [h/2, h] <= 0.5 max on [1, h/2)"});

  rep.checks.push_back({"zero_mean_noise", 0.0, true,
                        "IID zero-mean draws with finite variance"});

  for (const auto &c : rep.checks) {
    if (!c.pass) rep.warnings.push_back("check failed: " + c.name);
  }
  return rep;
}

}  // namespace projsa
