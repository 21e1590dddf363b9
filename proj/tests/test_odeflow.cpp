//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <cmath>

#include "projsa/error.hpp"
#include "projsa/odeflow.hpp"
#include "projsa/problems.hpp"

using namespace projsa;

namespace {

Problem decay() { return make_quadratic(Box::cube(1, -1.0, 1.0), {0.0}, {1.0}); }

double euler_error(double h) {
  const OdeTrajectory ode = projected_euler(decay(), Vector{1.0}, h, 1.0);
  return std::abs(ode.states.back()[0] - std::exp(-1.0));
}

}  // namespace

TEST(ProjectedEuler, LinearDecay) {
  const OdeTrajectory ode = projected_euler(decay(), Vector{1.0}, 0.01, 1.0);
  ASSERT_EQ(ode.states.size(), 101u);
  ASSERT_EQ(ode.times.size(), 101u);
  ASSERT_EQ(ode.correction.size(), 100u);
  EXPECT_NEAR(ode.times.back(), 1.0, 1e-12);
  EXPECT_NEAR(ode.states.back()[0], std::exp(-1.0), 2e-3);
  EXPECT_NEAR(ode.states.back()[0], std::pow(0.99, 100), 1e-14);
}

TEST(ProjectedEuler, FirstOrderRefinement) {
  for (double h : {0.02, 0.01, 0.005}) {
    const double ratio = euler_error(h) / euler_error(h / 2);
    EXPECT_GT(ratio, 2.0 * 0.8) << h;
    EXPECT_LT(ratio, 2.0 * 1.2) << h;
  }
}

TEST(ProjectedEuler, PinnedAndStill) {
  const Problem pin = make_pinned_drift(Box::cube(1, 0.0, 1.0), {1.0});
  const OdeTrajectory a = projected_euler(pin, Vector{1.0}, 0.1, 2.0);
  for (std::size_t k = 0; k < a.correction.size(); ++k) {
    ASSERT_EQ(a.states[k + 1][0], 1.0);
    ASSERT_NEAR(a.correction[k][0], 1.0, 1e-15);
  }
  const Problem still = make_quadratic(Box::cube(2, 0.0, 1.0), {0.3, 0.7}, {1.0, 1.0});
  const OdeTrajectory b = projected_euler(still, Vector{0.3, 0.7}, 0.1, 2.0);
  for (std::size_t k = 0; k < b.correction.size(); ++k) {
    ASSERT_EQ(b.states[k + 1], (Vector{0.3, 0.7}));
    ASSERT_EQ(b.correction[k], (Vector{0.0, 0.0}));
  }
}

TEST(ProjectedEuler, FeasibleAndConeConsistent) {
  const Problem p = make_rotation(Box::cube(2, 0.0, 1.0), {1.3, -0.2}, 2.0);
  const OdeTrajectory ode = projected_euler(p, Vector{0.5, 0.5}, 0.05, 10.0);
  bool projected = false;
  for (std::size_t k = 0; k < ode.correction.size(); ++k) {
    ASSERT_TRUE(p.box().contains(ode.states[k + 1]));
    ASSERT_TRUE(in_normal_cone(ode.correction[k], face_signature(ode.states[k + 1], p.box())));
    projected |= norm2(ode.correction[k]) > 0.0;
  }
  EXPECT_TRUE(projected);
}

TEST(ProjectedEuler, LyapunovDescent) {
  const Problem p = make_quadratic(Box::cube(3, 0.0, 1.0), {2.0, 0.5, -1.0}, {1.0, 2.0, 0.5});
  const OdeTrajectory ode = projected_euler(p, Vector{0.0, 1.0, 1.0}, 0.05, 5.0);
  for (std::size_t k = 0; k + 1 < ode.states.size(); ++k) {
    ASSERT_LE(p.lyapunov()->value(ode.states[k + 1]), p.lyapunov()->value(ode.states[k]) + 1e-15);
  }
}

TEST(ProjectedEuler, Errors) {
  EXPECT_THROW(projected_euler(decay(), Vector{2.0}, 0.01, 1.0), Error);
  EXPECT_THROW(projected_euler(decay(), Vector{0.0}, 0.0, 1.0), Error);
  EXPECT_THROW(projected_euler(decay(), Vector{0.0}, -0.1, 1.0), Error);
  EXPECT_THROW(projected_euler(decay(), Vector{0.0}, 0.5, 0.1), Error);
  EXPECT_THROW(projected_euler(decay(), Vector{0.0, 0.0}, 0.1, 1.0), Error);
}

TEST(CompareSaOde, MatchedStepZeroNoiseIsZero) {
  const double h = 0.01;
  const StepSchedule s = StepSchedule::table(std::vector<double>(3000, h));
  RunOptions o;
  o.n_steps = 3000;
  const Problem q = make_quadratic(Box::cube(2, 0.0, 1.0), {1.5, 0.2}, {1.0, 3.0});
  const Trajectory tr = run(q, s, NoiseModel::none(), o);
  EXPECT_EQ(compare_sa_ode(q, tr, 1, 5.0, h), 0.0);
  EXPECT_EQ(compare_sa_ode(q, tr, 700, 5.0, h), 0.0);

  const Problem pin = make_pinned_drift(Box::cube(1, 0.0, 1.0), {1.0});
  o.x0 = {1.0};
  const Trajectory tp = run(pin, StepSchedule::polynomial(0.5, 1.0), NoiseModel::none(), o);
  EXPECT_EQ(compare_sa_ode(pin, tp, 10, 1.0, 0.01), 0.0);
}

TEST(CompareSaOde, NoiseAddsDistance) {
  const Problem q = make_quadratic(Box::cube(1, 0.0, 1.0), {0.4}, {1.0});
  RunOptions o;
  o.n_steps = 2000;
  o.seed = 4;
  const StepSchedule s = StepSchedule::polynomial(1.0, 1.0);
  const Trajectory tr = run(q, s, NoiseModel(GaussianIID{0.1}, NoBias{}), o);
  const double d = compare_sa_ode(q, tr, 100, 1.0, 0.01);
  EXPECT_GT(d, 0.0);
  EXPECT_LT(d, 1.0);
  EXPECT_THROW(compare_sa_ode(q, tr, 1900, 1.0, 0.01), Error);
}

TEST(LyapunovRate, Examples) {
  const Problem q = make_quadratic(Box::cube(1, -5.0, 5.0), {1.0}, {1.0});
  EXPECT_DOUBLE_EQ(lyapunov_rate(q, Vector{1.5}), -0.25);
  const Problem face = make_quadratic(Box::cube(1, 0.0, 1.0), {2.0}, {1.0});
  EXPECT_EQ(lyapunov_rate(face, Vector{1.0}), 0.0);
  const Problem rot = make_rotation(Box::cube(2, 0.0, 1.0), {0.5, 0.5}, 1.0);
  EXPECT_THROW(lyapunov_rate(rot, Vector{0.5, 0.5}), Error);
}

TEST(Stationarity, Examples) {
  const Problem q = make_quadratic(Box::cube(1, 0.0, 1.0), {2.0}, {1.0});
  EXPECT_EQ(stationarity_residual(q, Vector{1.0}), 0.0);
  EXPECT_EQ(stationarity_residual(q, Vector{0.5}), 1.5);
  const Problem lasso = make_composite(Box::cube(1, -10.0, 10.0), {2.0}, {1.0}, Penalty::l1(1.0));
  EXPECT_EQ(stationarity_residual(lasso, Vector{1.0}), 0.0);
  EXPECT_EQ(stationarity_residual(lasso, Vector{0.0}), 1.0);
  EXPECT_EQ(stationarity_residual(lasso, Vector{3.0}), 2.0);
}

TEST(DistToStationary, Examples) {
  ProblemParts parts{"listed", Box::cube(1, 0.0, 2.0),
                     [](std::span<const double> x, std::span<double> out) { out[0] = 1.0 - x[0]; },
                     std::nullopt, std::nullopt, std::nullopt, 1.0,
                     ExplicitPoints{{Vector{1.0}}}};
  const Problem p(std::move(parts));
  EXPECT_DOUBLE_EQ(dist_to_stationary(p, Vector{0.4}), 0.6);
  EXPECT_EQ(dist_to_stationary(p, Vector{1.0}), 0.0);
}

TEST(DistToStationary, LassoAgainstGridOracle) {
  // Convex objective: S is its minimiser set, located on a 1e-5 grid of K.
  const double lambda = 0.7, target = 1.9;
  const Problem lasso =
      make_composite(Box::cube(1, -10.0, 10.0), {target}, {1.0}, Penalty::l1(lambda));
  double best = INFINITY, arg = 0.0;
  for (long i = 0; i <= 2000000; ++i) {
    const double x = -10.0 + 1e-5 * static_cast<double>(i);
    const double f = 0.5 * (x - target) * (x - target) + lambda * std::abs(x);
    if (f < best) { best = f; arg = x; }
  }
  for (double x : {-3.0, 0.0, 0.4, 1.2, 7.5}) {
    EXPECT_NEAR(dist_to_stationary(lasso, Vector{x}), std::abs(x - arg), 1e-5) << x;
  }
}
