//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "projsa/odeflow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "projsa/diagnostics.hpp"
#include "projsa/error.hpp"

namespace projsa {

OdeTrajectory projected_euler(const Problem &problem, std::span<const double> x0,
                              double h_ode, double T) {
  const Box &box = problem.box();
  box.check_dim(x0, "x0");
  if (!(h_ode > 0.0) || !std::isfinite(h_ode)) {
    fail(ErrorCode::InvalidArgument, "h_ode must be positive and finite");
  }
  if (!(T >= h_ode) || !std::isfinite(T)) {
    fail(ErrorCode::InvalidArgument, "T must be finite and at least h_ode");
  }
  if (!box.contains(x0)) fail(ErrorCode::OutOfRange, "x0 must lie in K");

  const auto steps = static_cast<std::size_t>(std::ceil(T / h_ode - 1e-9));
  const std::size_t d = box.dim();
  OdeTrajectory out;
  out.h = h_ode;
  out.times.reserve(steps + 1);
  out.states.reserve(steps + 1);
  out.correction.reserve(steps);
  out.times.push_back(0.0);
  out.states.emplace_back(x0.begin(), x0.end());

  Vector hx(d), next(d), z(d);
  for (std::size_t k = 0; k < steps; ++k) {
    const Vector &x = out.states.back();
    problem.drift(x, hx);
    for (std::size_t i = 0; i < d; ++i) {
      if (!std::isfinite(hx[i])) {
        fail(ErrorCode::NonFinite,
             "non-finite drift at Euler step " + std::to_string(k));
      }
      const double s = h_ode * hx[i];
      const double y = x[i] + s;
      next[i] = std::clamp(y, box.lower(i), box.upper(i));
      z[i] = projection_term(x[i], s, y, next[i], box.lower(i), box.upper(i)) / h_ode;
    }
    out.correction.push_back(z);
    out.states.push_back(next);
    out.times.push_back(static_cast<double>(k + 1) * h_ode);
  }
  return out;
}

double compare_sa_ode(const Problem &problem, const Trajectory &traj,
                      std::int64_t N, double T, double h_ode) {
  const Interpolant X(traj, N, InterpolantKind::State);
  if (!(X.breakpoint(X.cells()) > T)) {
    std::ostringstream os;
    os << "recorded window covers tau < " << X.breakpoint(X.cells())
       << " but T = " << T;
    fail(ErrorCode::OutOfRange, os.str());
  }
  const Vector start = X.cell_value(0);
  const OdeTrajectory ode = projected_euler(problem, start, h_ode, T);

  double gmin = h_ode;
  for (std::size_t j = 0; j < X.cells() && X.breakpoint(j) <= T; ++j) {
    gmin = std::min(gmin, X.breakpoint(j + 1) - X.breakpoint(j));
  }
  // Breakpoints closer than eps are the same point: a matched-step run must
  // not be penalised for the rounding of sum gamma against k h.
  const double eps = 1e-9 * gmin;

  const std::size_t d = traj.dim();
  double best = 0.0;
  std::size_t j = 0, k = 0;
  const std::size_t ode_last = ode.states.size() - 1;
  auto visit = [&](double b) {
    const double at = b + eps;
    while (j + 1 < X.cells() && X.breakpoint(j + 1) <= at) ++j;
    while (k < ode_last && ode.times[k + 1] <= at) ++k;
    const Vector xs = X.cell_value(j);
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double diff = xs[i] - ode.states[k][i];
      acc += diff * diff;
    }
    best = std::max(best, std::sqrt(acc));
  };
  std::size_t a = 0, c = 0;
  while (true) {
    const double ta = a < X.cells() ? X.breakpoint(a) : INFINITY;
    const double tc = c <= ode_last ? ode.times[c] : INFINITY;
    const double b = std::min(ta, tc);
    if (!(b <= T)) break;
    visit(b);
    if (ta <= b + eps) ++a;
    if (tc <= b + eps) ++c;
  }
  return best;
}

double lyapunov_rate(const Problem &problem, std::span<const double> x) {
  const auto &V = problem.lyapunov();
  if (!V) {
    fail(ErrorCode::InvalidArgument,
         "problem '" + problem.id() + "' has no Lyapunov function");
  }
  const FaceSignature sig = face_signature(x, problem.box());
  const Vector h = problem.drift(x);
  const Vector th = project_tangent(h, sig);
  Vector g(x.size());
  V->gradient(x, g);
  return dot(g, th);
}

double stationarity_residual(const Problem &problem, std::span<const double> x) {
  const FaceSignature sig = face_signature(x, problem.box());
  const Vector h = problem.drift(x);
  const auto &pen = problem.penalty();
  if (!pen) return norm2(project_tangent(h, sig));
  // 0 in grad f + dg + N_K  <=>  0 in h + (-dg) + (-N_K).
  const SubgradientInterval sub = clarke_interval(*pen, x);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, dist_to_normal_cone_shifted(h[i], -sub[i].hi,
                                                        -sub[i].lo, sig[i]));
  }
  return worst;
}

double dist_to_stationary(const Problem &problem, std::span<const double> x) {
  problem.box().check_dim(x, "x");
  if (const auto *pts = std::get_if<ExplicitPoints>(&problem.stationary())) {
    double best = INFINITY;
    for (const Vector &p : pts->points) {
      double acc = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double diff = x[i] - p[i];
        acc += diff * diff;
      }
      best = std::min(best, std::sqrt(acc));
    }
    return best;
  }
  return stationarity_residual(problem, x);
}

}  // namespace projsa
