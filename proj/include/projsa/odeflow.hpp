//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROJSA_ODEFLOW_HPP
#define PROJSA_ODEFLOW_HPP

#include <cstdint>
#include <vector>

#include "projsa/engine.hpp"
#include "projsa/problem.hpp"

namespace projsa {

/// Projected explicit Euler path of xdot = h(x) - z, z in N_K(x).
/// states[k] sits at times[k] = k h; correction[k] is the cone element
/// applied on the step from states[k] to states[k+1].
struct OdeTrajectory {
  double h = 0.0;
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<Vector> correction;
};

/// ceil(T / h_ode) steps of x_{k+1} = Pi_K(x_k + h_ode h(x_k)).
OdeTrajectory projected_euler(const Problem &problem, std::span<const double> x0,
                              double h_ode, double T);

/// sup over t in [0, T] of |X_N(t) - x_ode(t)|, both taken piecewise
/// constant on their own grids, the ODE started from X_N(0).
double compare_sa_ode(const Problem &problem, const Trajectory &traj,
                      std::int64_t N, double T, double h_ode);

/// <grad V(x), Pi_{T_K(x)} h(x)>.
double lyapunov_rate(const Problem &problem, std::span<const double> x);

/// Without a penalty: |Pi_{T_K(x)} h(x)|. With a penalty: the largest
/// per-coordinate distance from 0 to grad f_i + dg_i + N_i(x).
double stationarity_residual(const Problem &problem, std::span<const double> x);

/// Distance to the listed stationary points, or the residual when the set is
/// only known through it.
double dist_to_stationary(const Problem &problem, std::span<const double> x);

}  // namespace projsa

#endif  // PROJSA_ODEFLOW_HPP
