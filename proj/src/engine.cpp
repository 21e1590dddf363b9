//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "projsa/engine.hpp"

#include <algorithm>
#include <cmath>

#include "projsa/error.hpp"
#include "projsa/prox.hpp"

namespace projsa {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::RM: return "rm";
    case Algorithm::ProxV1: return "prox1";
    case Algorithm::ProxV2: return "prox2";
  }
  return "rm";
}

Algorithm algorithm_from_string(const std::string &s) {
  if (s == "rm") return Algorithm::RM;
  if (s == "prox1") return Algorithm::ProxV1;
  if (s == "prox2") return Algorithm::ProxV2;
  fail(ErrorCode::InvalidArgument,
       "algorithm: expected one of rm, prox1, prox2 (got '" + s + "')");
}

// ---------------------------------------------------------------------------

void Trajectory::reserve(std::size_t count) {
  n_.reserve(count);
  t_.reserve(count);
  gamma_.reserve(count);
  for (Vector *v : {&x_prev_, &x_, &e_, &r_, &h_, &P_}) v->reserve(count * dim_);
}

void Trajectory::push_back(const IterateRecord &rec) {
  for (const Vector *v : {&rec.x_prev, &rec.x, &rec.e, &rec.r, &rec.hval, &rec.P}) {
    if (v->size() != dim_) {
      fail(ErrorCode::DimensionMismatch, "trajectory: record has wrong dimension");
    }
  }
  if (!n_.empty() && rec.n <= n_.back()) {
    fail(ErrorCode::InvalidArgument, "trajectory: step numbers must increase");
  }
  n_.push_back(rec.n);
  t_.push_back(rec.t);
  gamma_.push_back(rec.gamma);
  x_prev_.insert(x_prev_.end(), rec.x_prev.begin(), rec.x_prev.end());
  x_.insert(x_.end(), rec.x.begin(), rec.x.end());
  e_.insert(e_.end(), rec.e.begin(), rec.e.end());
  r_.insert(r_.end(), rec.r.begin(), rec.r.end());
  h_.insert(h_.end(), rec.hval.begin(), rec.hval.end());
  P_.insert(P_.end(), rec.P.begin(), rec.P.end());
}

IterateRecord Trajectory::record(std::size_t i) const {
  auto vec = [](std::span<const double> s) { return Vector(s.begin(), s.end()); };
  return {n_[i], t_[i], gamma_[i], vec(x_prev(i)), vec(x(i)),
          vec(e(i)), vec(r(i)), vec(hval(i)), vec(P(i))};
}

std::ptrdiff_t Trajectory::find(std::int64_t n) const {
  const auto it = std::lower_bound(n_.begin(), n_.end(), n);
  if (it == n_.end() || *it != n) return -1;
  return it - n_.begin();
}

std::size_t Trajectory::contiguous_from(std::size_t i) const {
  if (i >= n_.size()) return 0;
  std::size_t j = i + 1;
  while (j < n_.size() && n_[j] == n_[j - 1] + 1) ++j;
  return j - i;
}

bool operator==(const Trajectory &a, const Trajectory &b) {
  return a.dim_ == b.dim_ && a.n_ == b.n_ && a.t_ == b.t_ &&
         a.gamma_ == b.gamma_ && a.x_prev_ == b.x_prev_ && a.x_ == b.x_ &&
         a.e_ == b.e_ && a.r_ == b.r_ && a.h_ == b.h_ && a.P_ == b.P_;
}

// ---------------------------------------------------------------------------

namespace {

void resize_record(IterateRecord &rec, std::size_t d) {
  for (Vector *v : {&rec.x_prev, &rec.x, &rec.e, &rec.r, &rec.hval, &rec.P}) {
    v->resize(d);
  }
}

void check_prox_problem(const Problem &problem) {
  if (!problem.objective()) {
    fail(ErrorCode::InvalidArgument,
         "proximal updates need a problem with a smooth objective f");
  }
}

// Fills rec (already sized) for step n from rec.x_prev. The gradient sample
// of the proximal modes is H = -(h + e + r), so all three updates move from
// the same point y = x + gamma (h + e + r).
void step_into(Algorithm alg, const Problem &problem, std::int64_t n,
               double gamma, const NoiseModel &noise, RngState &rng,
               IterateRecord &rec) {
  const Box &box = problem.box();
  const std::size_t d = box.dim();
  rec.n = n;
  rec.gamma = gamma;
  problem.drift(rec.x_prev, rec.hval);
  for (std::size_t i = 0; i < d; ++i) {
    if (!std::isfinite(rec.hval[i])) {
      fail(ErrorCode::NonFinite, "step " + std::to_string(n) +
                                     ": drift returned a non-finite value in "
                                     "coordinate " + std::to_string(i));
    }
  }
  sample_noise_into(noise, n, rec.x_prev, rng, rec.e, rec.r);

  const Penalty pen = problem.penalty().value_or(Penalty::zero());
  for (std::size_t i = 0; i < d; ++i) {
    const double lo = box.lower(i), hi = box.upper(i);
    const double x = rec.x_prev[i];
    const double s = gamma * ((rec.hval[i] + rec.e[i]) + rec.r[i]);
    const double y = x + s;
    if (!std::isfinite(y)) {
      fail(ErrorCode::NonFinite, "step " + std::to_string(n) +
                                     ": non-finite update in coordinate " +
                                     std::to_string(i));
    }
    double next = 0.0;
    switch (alg) {
      case Algorithm::RM:
        next = std::clamp(y, lo, hi);
        break;
      case Algorithm::ProxV1:
        next = prox1_box(pen, y, gamma, lo, hi);
        break;
      case Algorithm::ProxV2:
        next = std::clamp(prox1(pen, y, gamma), lo, hi);
        break;
    }
    rec.x[i] = next;
    rec.P[i] = projection_term(x, s, y, next, lo, hi);
  }
}

StepResult single_step(Algorithm alg, const Problem &problem,
                       std::span<const double> x, std::int64_t n,
                       const StepSchedule &schedule, const NoiseModel &noise,
                       const RngState &rng) {
  problem.box().check_dim(x, "step");
  if (!problem.box().contains(x)) {
    fail(ErrorCode::OutOfRange, "step " + std::to_string(n) +
                                    ": current iterate lies outside K");
  }
  if (alg != Algorithm::RM) check_prox_problem(problem);
  StepResult out{{}, rng};
  resize_record(out.record, x.size());
  std::copy(x.begin(), x.end(), out.record.x_prev.begin());
  const double g = schedule.gamma(n);
  step_into(alg, problem, n, g, noise, out.rng, out.record);
  out.record.t = cumulative_time(schedule, n);
  return out;
}

}  // namespace

StepResult step_rm(const Problem &problem, std::span<const double> x,
                   std::int64_t n, const StepSchedule &schedule,
                   const NoiseModel &noise, const RngState &rng) {
  return single_step(Algorithm::RM, problem, x, n, schedule, noise, rng);
}

StepResult step_prox_v1(const Problem &problem, std::span<const double> x,
                        std::int64_t k, const StepSchedule &schedule,
                        const NoiseModel &noise, const RngState &rng) {
  return single_step(Algorithm::ProxV1, problem, x, k, schedule, noise, rng);
}

StepResult step_prox_v2(const Problem &problem, std::span<const double> x,
                        std::int64_t k, const StepSchedule &schedule,
                        const NoiseModel &noise, const RngState &rng) {
  return single_step(Algorithm::ProxV2, problem, x, k, schedule, noise, rng);
}

Trajectory run(const Problem &problem, const StepSchedule &schedule,
               const NoiseModel &noise, const RunOptions &opts) {
  if (opts.n_steps < 1) {
    fail(ErrorCode::InvalidArgument, "run: n_steps must be at least 1");
  }
  if (const auto limit = schedule.horizon_limit();
      limit >= 0 && opts.n_steps > limit) {
    fail(ErrorCode::OutOfRange, "run: n_steps exceeds the step table length");
  }
  const std::size_t d = problem.dim();
  if (opts.algorithm != Algorithm::RM) check_prox_problem(problem);

  Vector x0 = opts.x0.empty() ? problem.box().lower() : opts.x0;
  problem.box().check_dim(x0, "run.x0");
  for (double v : x0) {
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "run.x0: must be finite");
  }

  Trajectory traj(d);
  traj.x_init = project_box(x0, problem.box());
  traj.meta.seed = opts.seed;
  traj.meta.stream = opts.stream;
  traj.meta.problem_id = problem.id();
  traj.meta.algorithm = opts.algorithm;

  const std::int64_t N = opts.n_steps;
  std::int64_t head = N, tail = 0, stride = 1;
  if (const auto *th = std::get_if<RecordThin>(&opts.policy)) {
    if (th->stride < 1 || th->head < 0 || th->tail < 0) {
      fail(ErrorCode::InvalidArgument, "record: thin stride must be >= 1");
    }
    head = th->head;
    tail = th->tail;
    stride = th->stride;
    traj.reserve(static_cast<std::size_t>(std::min(N, head + tail + N / stride + 1)));
  } else if (const auto *w = std::get_if<RecordWindow>(&opts.policy)) {
    if (w->size < 1) fail(ErrorCode::InvalidArgument, "record: window size must be >= 1");
    head = w->size;
    tail = w->size;
    stride = 0;
    traj.reserve(static_cast<std::size_t>(std::min(N, 2 * w->size)));
  } else {
    traj.reserve(static_cast<std::size_t>(N));
  }

  RunAggregates agg;
  agg.sum_projection.assign(d, 0.0);

  // Circular buffer for the trailing window; slots are reused so the
  // steady state does not allocate.
  const bool windowed = stride == 0;
  std::vector<IterateRecord> ring;
  std::size_t ring_next = 0, ring_count = 0;
  if (windowed) ring.resize(static_cast<std::size_t>(std::min(tail, N)));

  RngState rng{opts.seed, opts.stream, 0};
  IterateRecord rec;
  resize_record(rec, d);
  Vector x = traj.x_init;
  double t = 0.0;
  for (std::int64_t n = 1; n <= N; ++n) {
    const double g = schedule.gamma(n);
    std::copy(x.begin(), x.end(), rec.x_prev.begin());
    step_into(opts.algorithm, problem, n, g, noise, rng, rec);
    t += g;
    rec.t = t;

    ++agg.steps;
    bool projected = false;
    double pn = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      projected = projected || rec.P[i] != 0.0;
      agg.sum_projection[i] += rec.P[i];
      pn += rec.P[i] * rec.P[i];
    }
    if (projected) ++agg.projected_steps;
    agg.max_projection = std::max(agg.max_projection, std::sqrt(pn));

    if (opts.observer) opts.observer(rec);

    if (windowed) {
      if (n <= head) {
        traj.push_back(rec);
      } else {
        ring[ring_next] = rec;
        ring_next = (ring_next + 1) % ring.size();
        ring_count = std::min(ring_count + 1, ring.size());
      }
    } else if (n <= head || n > N - tail || n % stride == 0) {
      traj.push_back(rec);
    }
    x.swap(rec.x);
    rec.x.resize(d);
  }
  for (std::size_t k = 0; k < ring_count; ++k) {
    traj.push_back(ring[(ring_next + ring.size() - ring_count + k) % ring.size()]);
  }

  agg.final_x = x;
  agg.final_t = t;
  traj.aggregates = std::move(agg);
  return traj;
}

}  // namespace projsa
