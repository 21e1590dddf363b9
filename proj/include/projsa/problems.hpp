//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROJSA_PROBLEMS_HPP
#define PROJSA_PROBLEMS_HPP

#include <vector>

#include "projsa/problem.hpp"

namespace projsa {

/// f = 1/2 sum_i A_i (x_i - target_i)^2, h = -grad f, V = f - min_K f.
/// S = {clamp(target)}.
Problem make_quadratic(const Box &box, Vector target, Vector a_diag);

/// h(x) = M (target - x), M = [[1, omega], [-omega, 1]]. Not a gradient
/// field; no Lyapunov function is attached.
Problem make_rotation(const Box &box, Vector target, double omega);

/// f as in make_quadratic plus a separable penalty. For dim <= 2 the
/// stationary set is found at construction by a grid scan of K (step 1e-4)
/// on the first-order inclusion; higher dimensions use the residual.
Problem make_composite(const Box &box, Vector target, Vector a_diag,
                       const Penalty &pen);

/// Constant drift along the normalized direction; H = 1.
Problem make_pinned_drift(const Box &box, Vector direction);

/// Per-coordinate stationary points of the 1-D inclusion
///   0 in A (t - target) + dp(t) + N_[lo,hi](t)
/// found on a grid of the given step and refined by bisection.
std::vector<double> stationary_points_1d(double a, double target,
                                         const Penalty &pen, double lo,
                                         double hi, double step);

}  // namespace projsa

#endif  // PROJSA_PROBLEMS_HPP
