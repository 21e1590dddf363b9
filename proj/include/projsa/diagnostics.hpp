//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROJSA_DIAGNOSTICS_HPP
#define PROJSA_DIAGNOSTICS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "projsa/engine.hpp"

namespace projsa {

// Continuous-time view of a run on the time scale t_n = sum_{k<=n} gamma_k.
// Cell j of the process shifted by N is [tau_j, tau_{j+1}) with
// tau_j = t_{N-1+j} - t_{N-1}; on it
//   X_N = x_{N+j}                       (State)
//   Z_N = sum_{s < N+j} P_s             (ProjSum)
// so that X_N(tau_j) - X_N(0) = sum_{k<j} (gamma h + gamma (e + r) - P)_{N+k}
// holds cell by cell. When the recorded segment does not start at step 1,
// Z is offset by the projections before the segment; every statistic below
// only uses differences of Z.
//
// All statistics take the per-coordinate supremum and add the coordinates
// up, matching the sum over coordinates used to bound |sum P_k|.

enum class InterpolantKind { State, ProjSum };

class Interpolant {
 public:
  /// Needs step shift-1 recorded (unless shift == 1) and contiguous records
  /// from step shift onwards.
  Interpolant(const Trajectory &traj, std::int64_t shift, InterpolantKind kind);

  InterpolantKind kind() const noexcept { return kind_; }
  std::int64_t shift() const noexcept { return shift_; }
  std::size_t cells() const noexcept { return cells_; }

  /// tau_j for j in [0, cells()]; tau_cells() is the end of the recorded
  /// range (exclusive).
  double breakpoint(std::size_t j) const;
  Vector cell_value(std::size_t j) const;

  /// Piecewise-constant lookup; t outside [0, end) throws.
  Vector operator()(double t) const;

 private:
  const Trajectory *traj_;
  std::int64_t shift_;
  InterpolantKind kind_;
  std::size_t first_;
  std::size_t cells_;
  double t_origin_;
  std::vector<Vector> z_;  // ProjSum prefix values per cell
};

Vector eval_interpolant(const Interpolant &ip, double t);

/// Windowed partial-sum statistic: sup over windows [n, m], N <= n <= m,
/// sum_{k=n}^m gamma_k < delta of |sum_{k=n}^m y_k| with
/// y_k = gamma_k (h_k + e_k + r_k) - P_k. Runs to the end of the contiguous
/// segment holding step N. O(length) via monotone deques.
double partial_sum_stat(const Trajectory &traj, std::int64_t N, double delta);

/// sup over s, t in [0, T], |t - s| < delta of |F_N(t) - F_N(s)|.
double equicontinuity_modulus(const Trajectory &traj, InterpolantKind kind,
                              std::int64_t N, double T, double delta);

struct LipschitzEstimate {
  double estimate = 0.0;
  /// (H + R) d as supplied by the caller.
  double ceiling = 0.0;
  /// Smallest admissible t - s.
  double separation_floor = 0.0;
  double max_gamma = 0.0;
};

/// Default pair-separation floor: max(5 max_window gamma, T / 100).
double default_separation_floor(double max_gamma, double T);

/// max over grid pairs s < t in [0, T] with t - s >= floor of
/// |Z_N(t) - Z_N(s)| / (t - s). Exact: a pair further apart than
/// 2 floor + max_gamma splits at a grid point into two admissible pairs, one
/// of which has at least the same quotient, so only shorter pairs are scanned.
LipschitzEstimate lipschitz_estimate_Z(const Trajectory &traj, std::int64_t N,
                                       double T, double ceiling,
                                       std::optional<double> floor = std::nullopt);

/// sup over grid t in [0, T] of
/// |X_N(t) - X_N(0) - int_0^t h(X_N(s)) ds + Z_N(t) - Z_N(0)|.
double integral_residual(const Trajectory &traj, std::int64_t N, double T);

/// The same residual vector at an arbitrary t, with the partial cell
/// integrated exactly.
Vector integral_identity_at(const Trajectory &traj, std::int64_t N, double t);

struct DiagnosticRow {
  std::int64_t N = 0;
  double delta = 0.0;
  double partial_sum = 0.0;
  double modulus_x = 0.0;
  double modulus_z = 0.0;
  double lipschitz_z = 0.0;
  double integral_residual = 0.0;
};

struct DiagnosticReport {
  double T = 0.0;
  double lipschitz_ceiling = 0.0;
  std::vector<DiagnosticRow> rows;
  std::vector<std::string> violations;
};

/// Tabulates every statistic over the (N, delta) grid and flags
///  - partial_sum_stat increasing in N (impossible: the windows nest),
///  - a statistic that is positive at the smallest N and not smaller at the
///    largest N,
///  - a Lipschitz estimate above 1.05 times the ceiling at the largest N.
DiagnosticReport diagnostic_sweep(const Trajectory &traj,
                                  std::vector<std::int64_t> N_list, double T,
                                  const std::vector<double> &delta_list,
                                  double lipschitz_ceiling);

}  // namespace projsa

#endif  // PROJSA_DIAGNOSTICS_HPP
