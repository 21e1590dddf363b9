//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "projsa/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "projsa/rng.hpp"

namespace projsa {

namespace {

constexpr double kCoarse = 1e-3;
constexpr double kFine = 1e-6;

double penalty_at(PenaltyKind kind, double lam, double shape, double y) {
  const double t = std::abs(y);
  switch (kind) {
    case PenaltyKind::Zero:
      return 0.0;
    case PenaltyKind::L1:
      return lam * t;
    case PenaltyKind::MCP:
      return t <= shape * lam ? lam * t - t * t / (2.0 * shape)
                              : shape * lam * lam / 2.0;
    case PenaltyKind::SCAD:
      if (t <= lam) return lam * t;
      if (t <= shape * lam) {
        return (2.0 * shape * lam * t - t * t - lam * lam) / (2.0 * (shape - 1.0));
      }
      return lam * lam * (shape + 1.0) / 2.0;
  }
  return 0.0;
}

struct Scan {
  PenaltyKind kind;
  double lam, shape, v, gamma;

  double objective(double y) const {
    return penalty_at(kind, lam, shape, y) + (v - y) * (v - y) / (2.0 * gamma);
  }

  // Best point of lo + k step, k = 0..count, plus the end point hi.
  void sweep(double lo, double hi, double step, double &best_y,
             double &best_f) const {
    const auto count = static_cast<std::int64_t>(std::floor((hi - lo) / step));
    for (std::int64_t k = 0; k <= count + 1; ++k) {
      const double y = k <= count ? lo + static_cast<double>(k) * step : hi;
      consider(y, best_y, best_f);
    }
  }

  void consider(double y, double &best_y, double &best_f) const {
    const double f = objective(y);
    if (f < best_f || (f == best_f && std::abs(y) < std::abs(best_y))) {
      best_f = f;
      best_y = y;
    }
  }
};

}  // namespace

double grid_oracle_prox(PenaltyKind kind, double lambda, double shape, double v,
                        double gamma, double lo, double hi) {
  const Scan scan{kind, lambda, shape, v, gamma};
  // The unconstrained minimizer lies between 0 and v; restricted to the box
  // it lies in that bracket's intersection with the box, or at the box end
  // nearest to it.
  double a = std::max(lo, std::min(0.0, v) - 0.5);
  double b = std::min(hi, std::max(0.0, v) + 0.5);
  if (a > b) {
    a = lo;
    b = hi;
  }
  std::vector<double> ys, fs;
  const auto count = static_cast<std::int64_t>(std::floor((b - a) / kCoarse));
  for (std::int64_t k = 0; k <= count + 1; ++k) {
    const double y = k <= count ? a + static_cast<double>(k) * kCoarse : b;
    ys.push_back(y);
    fs.push_back(scan.objective(y));
  }
  double best_y = ys.front();
  double best_f = std::numeric_limits<double>::infinity();
  const std::size_t m = ys.size();
  for (std::size_t k = 0; k < m; ++k) {
    const bool left_ok = k == 0 || fs[k] <= fs[k - 1];
    const bool right_ok = k + 1 == m || fs[k] <= fs[k + 1];
    if (!(left_ok && right_ok) && k != 0 && k + 1 != m) continue;
    const double flo = std::max(a, ys[k] - 2.0 * kCoarse);
    const double fhi = std::min(b, ys[k] + 2.0 * kCoarse);
    scan.sweep(flo, fhi, kFine, best_y, best_f);
  }
  // Penalty kinks and the data point, where the fine grid may straddle the
  // exact minimizer.
  for (double knot : {0.0, lambda, -lambda, shape * lambda, -shape * lambda,
                      std::clamp(v, lo, hi)}) {
    if (knot >= a && knot <= b) scan.consider(knot, best_y, best_f);
  }
  return best_y;
}

SelftestReport run_prox_selftest(const SelftestOptions &opts) {
  SelftestReport rep;
  const RngState rng{opts.seed, 0x5e1f7e57ULL};
  std::uint64_t step = 0;
  for (PenaltyKind kind : {PenaltyKind::L1, PenaltyKind::MCP, PenaltyKind::SCAD,
                           PenaltyKind::Zero}) {
    for (bool boxed : {false, true}) {
      SelftestVariant var;
      var.name = Penalty::unchecked(kind, 0.0, 0.0).name() +
                 (boxed ? "+box" : "");
      var.instances = opts.instances;
      for (std::int64_t i = 0; i < opts.instances; ++i, ++step) {
        auto u = [&](std::uint64_t idx, double lo, double hi) {
          return lo + (hi - lo) * rng.uniform(step, idx);
        };
        SelftestCase c;
        c.kind = kind;
        c.boxed = boxed;
        c.lambda = kind == PenaltyKind::Zero ? 0.0 : u(0, 0.0, 2.0);
        c.shape = kind == PenaltyKind::MCP ? u(1, 1.0, 4.0)
                  : kind == PenaltyKind::SCAD ? u(1, 2.0, 5.0)
                                               : 0.0;
        c.gamma = u(2, 0.01, 2.0);
        c.v = u(3, -5.0, 5.0);
        c.lo = -std::numeric_limits<double>::infinity();
        c.hi = std::numeric_limits<double>::infinity();
        if (boxed) {
          double p = u(4, -3.0, 3.0), q = u(5, -3.0, 3.0);
          if (p > q) std::swap(p, q);
          if (q - p < 0.01) q = p + 0.01;
          c.lo = p;
          c.hi = q;
        }
        const double lam_used = opts.corrupt_lambda_sign ? -c.lambda : c.lambda;
        const Penalty pen = Penalty::unchecked(kind, lam_used, c.shape);
        c.prox = boxed ? prox1_box(pen, c.v, c.gamma, c.lo, c.hi)
                       : prox1(pen, c.v, c.gamma);
        c.oracle = grid_oracle_prox(kind, c.lambda, c.shape, c.v, c.gamma, c.lo, c.hi);
        const double err = std::abs(c.prox - c.oracle);
        if (i == 0 || !(err <= var.max_error)) {
          var.max_error = std::isnan(err) ? INFINITY : err;
          var.worst = c;
        }
      }
      rep.max_error = std::max(rep.max_error, var.max_error);
      rep.variants.push_back(var);
    }
  }
  rep.pass = rep.max_error <= opts.tolerance;
  return rep;
}

}  // namespace projsa
