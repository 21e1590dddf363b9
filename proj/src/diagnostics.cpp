//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "projsa/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "projsa/error.hpp"

namespace projsa {

namespace {

struct Window {
  std::size_t first = 0;  // index of step N
  std::size_t count = 0;  // contiguous records from first
  double t_origin = 0.0;  // t_{N-1}
};

Window locate(const Trajectory &traj, std::int64_t N) {
  if (N < 1) fail(ErrorCode::InvalidArgument, "shift N must be >= 1");
  const std::ptrdiff_t idx = traj.find(N);
  if (idx < 0) {
    fail(ErrorCode::OutOfRange,
         "step " + std::to_string(N) + " is not recorded in the trajectory");
  }
  Window w;
  w.first = static_cast<std::size_t>(idx);
  w.count = traj.contiguous_from(w.first);
  if (N == 1) {
    w.t_origin = 0.0;
  } else {
    if (w.first == 0 || traj.n(w.first - 1) != N - 1) {
      fail(ErrorCode::OutOfRange, "step " + std::to_string(N - 1) +
                                      " is not recorded; t_{N-1} is unknown");
    }
    w.t_origin = traj.t(w.first - 1);
  }
  return w;
}

// t_{N-1+j} for j in [0, count].
double grid_time(const Trajectory &traj, const Window &w, std::size_t j) {
  return j == 0 ? w.t_origin : traj.t(w.first + j - 1);
}

// Number of grid points tau_j <= T, requiring tau_count > T.
std::size_t cells_up_to(const Trajectory &traj, const Window &w, double T,
                        bool strict_cover) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    fail(ErrorCode::InvalidArgument, "T must be positive and finite");
  }
  const double end = grid_time(traj, w, w.count) - w.t_origin;
  if (strict_cover ? !(end > T) : !(end >= T)) {
    std::ostringstream os;
    os << "recorded window covers tau < " << end << " but T = " << T;
    fail(ErrorCode::OutOfRange, os.str());
  }
  std::size_t j = 0;
  while (j + 1 < w.count && grid_time(traj, w, j + 1) - w.t_origin <= T) ++j;
  return j + 1;  // points 0..j
}

// Sliding extrema of a sequence over windows [lo, hi] with nondecreasing
// bounds.
class MonotoneWindow {
 public:
  explicit MonotoneWindow(const std::vector<double> &v) : v_(v) {}
  void push(std::size_t i) {
    while (!mx_.empty() && v_[mx_.back()] <= v_[i]) mx_.pop_back();
    mx_.push_back(i);
    while (!mn_.empty() && v_[mn_.back()] >= v_[i]) mn_.pop_back();
    mn_.push_back(i);
  }
  void drop_below(std::size_t lo) {
    while (!mx_.empty() && mx_.front() < lo) mx_.pop_front();
    while (!mn_.empty() && mn_.front() < lo) mn_.pop_front();
  }
  bool empty() const { return mx_.empty(); }
  double max() const { return v_[mx_.front()]; }
  double min() const { return v_[mn_.front()]; }

 private:
  const std::vector<double> &v_;
  std::deque<std::size_t> mx_, mn_;
};

void check_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    fail(ErrorCode::InvalidArgument, "delta must be positive and finite");
  }
}

}  // namespace

Interpolant::Interpolant(const Trajectory &traj, std::int64_t shift,
                         InterpolantKind kind)
    : traj_(&traj), shift_(shift), kind_(kind) {
  const Window w = locate(traj, shift);
  first_ = w.first;
  cells_ = w.count;
  t_origin_ = w.t_origin;
  if (kind_ == InterpolantKind::ProjSum) {
    const std::size_t d = traj.dim();
    // Start of the contiguous segment containing step N.
    std::size_t seg = first_;
    while (seg > 0 && traj.n(seg - 1) == traj.n(seg) - 1) --seg;
    Vector acc(d, 0.0);
    for (std::size_t i = seg; i < first_; ++i) {
      auto p = traj.P(i);
      for (std::size_t l = 0; l < d; ++l) acc[l] += p[l];
    }
    z_.reserve(cells_);
    for (std::size_t j = 0; j < cells_; ++j) {
      z_.push_back(acc);
      auto p = traj.P(first_ + j);
      for (std::size_t l = 0; l < d; ++l) acc[l] += p[l];
    }
  }
}

double Interpolant::breakpoint(std::size_t j) const {
  if (j > cells_) fail(ErrorCode::OutOfRange, "breakpoint index out of range");
  return (j == 0 ? t_origin_ : traj_->t(first_ + j - 1)) - t_origin_;
}

Vector Interpolant::cell_value(std::size_t j) const {
  if (j >= cells_) fail(ErrorCode::OutOfRange, "cell index out of range");
  if (kind_ == InterpolantKind::ProjSum) return z_[j];
  auto xp = traj_->x_prev(first_ + j);
  return Vector(xp.begin(), xp.end());
}

Vector Interpolant::operator()(double t) const {
  const double end = breakpoint(cells_);
  if (!(t >= 0.0) || !(t < end)) {
    std::ostringstream os;
    os << "t = " << t << " outside the recorded range [0, " << end << ")";
    fail(ErrorCode::OutOfRange, os.str());
  }
  // Largest j with tau_j <= t.
  std::size_t lo = 0, hi = cells_;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (breakpoint(mid) <= t) lo = mid; else hi = mid;
  }
  return cell_value(lo);
}

Vector eval_interpolant(const Interpolant &ip, double t) { return ip(t); }

double partial_sum_stat(const Trajectory &traj, std::int64_t N, double delta) {
  check_delta(delta);
  if (N < 1) fail(ErrorCode::InvalidArgument, "shift N must be >= 1");
  const std::ptrdiff_t idx = traj.find(N);
  if (idx < 0) {
    fail(ErrorCode::OutOfRange,
         "step " + std::to_string(N) + " is not recorded in the trajectory");
  }
  const std::size_t first = static_cast<std::size_t>(idx);
  const std::size_t L = traj.contiguous_from(first);
  const std::size_t d = traj.dim();

  std::vector<double> G(L + 1, 0.0);
  for (std::size_t k = 0; k < L; ++k) G[k + 1] = G[k] + traj.gamma(first + k);

  double total = 0.0;
  std::vector<double> Y(L + 1, 0.0);
  for (std::size_t l = 0; l < d; ++l) {
    for (std::size_t k = 0; k < L; ++k) {
      const std::size_t i = first + k;
      const double s = traj.gamma(i) * ((traj.hval(i)[l] + traj.e(i)[l]) + traj.r(i)[l]);
      Y[k + 1] = Y[k] + (s - traj.P(i)[l]);
    }
    MonotoneWindow win(Y);
    double best = 0.0;
    std::size_t lo = 0;
    for (std::size_t m = 0; m < L; ++m) {
      win.push(m);
      while (lo <= m && !(G[m + 1] - G[lo] < delta)) ++lo;
      win.drop_below(lo);
      if (lo > m) continue;
      best = std::max({best, Y[m + 1] - win.min(), win.max() - Y[m + 1]});
    }
    total += best;
  }
  return total;
}

double equicontinuity_modulus(const Trajectory &traj, InterpolantKind kind,
                              std::int64_t N, double T, double delta) {
  check_delta(delta);
  const Window w = locate(traj, N);
  const std::size_t J = cells_up_to(traj, w, T, true);
  const Interpolant ip(traj, N, kind);
  const std::size_t d = traj.dim();

  std::vector<Vector> F(J);
  for (std::size_t j = 0; j < J; ++j) F[j] = ip.cell_value(j);

  // Cells j < j' are within delta iff tau_{j'} - tau_{j+1} < delta.
  double total = 0.0;
  std::vector<double> col(J);
  for (std::size_t l = 0; l < d; ++l) {
    for (std::size_t j = 0; j < J; ++j) col[j] = F[j][l];
    MonotoneWindow win(col);
    double best = 0.0;
    std::size_t lo = 0;
    for (std::size_t jp = 1; jp < J; ++jp) {
      win.push(jp - 1);
      const double tj = grid_time(traj, w, jp);
      while (lo < jp && !(tj - grid_time(traj, w, lo + 1) < delta)) ++lo;
      win.drop_below(lo);
      if (win.empty()) continue;
      best = std::max({best, col[jp] - win.min(), win.max() - col[jp]});
    }
    total += best;
  }
  return total;
}

double default_separation_floor(double max_gamma, double T) {
  return std::max(5.0 * max_gamma, T / 100.0);
}

LipschitzEstimate lipschitz_estimate_Z(const Trajectory &traj, std::int64_t N,
                                       double T, double ceiling,
                                       std::optional<double> floor) {
  const Window w = locate(traj, N);
  const std::size_t J = cells_up_to(traj, w, T, false);
  const Interpolant ip(traj, N, InterpolantKind::ProjSum);
  const std::size_t d = traj.dim();

  LipschitzEstimate out;
  out.ceiling = ceiling;
  for (std::size_t j = 0; j + 1 < J; ++j) {
    out.max_gamma = std::max(out.max_gamma, traj.gamma(w.first + j));
  }
  if (J > 0) out.max_gamma = std::max(out.max_gamma, traj.gamma(w.first + J - 1));
  const double L = floor ? *floor : default_separation_floor(out.max_gamma, T);
  if (!(L > 0.0)) fail(ErrorCode::InvalidArgument, "separation floor must be positive");
  out.separation_floor = L;
  const double reach = 2.0 * L + out.max_gamma;

  std::vector<double> tau(J);
  for (std::size_t j = 0; j < J; ++j) tau[j] = grid_time(traj, w, j);
  std::vector<Vector> Z(J);
  for (std::size_t j = 0; j < J; ++j) Z[j] = ip.cell_value(j);

  for (std::size_t l = 0; l < d; ++l) {
    double best = 0.0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < J; ++i) {
      start = std::max(start, i + 1);
      while (start < J && tau[start] - tau[i] < L) ++start;
      for (std::size_t j = start; j < J; ++j) {
        const double sep = tau[j] - tau[i];
        if (sep > reach) break;
        best = std::max(best, std::abs(Z[j][l] - Z[i][l]) / sep);
      }
    }
    out.estimate += best;
  }
  return out;
}

double integral_residual(const Trajectory &traj, std::int64_t N, double T) {
  const Window w = locate(traj, N);
  const std::size_t J = cells_up_to(traj, w, T, false);
  const std::size_t d = traj.dim();
  double total = 0.0;
  for (std::size_t l = 0; l < d; ++l) {
    const double x0 = traj.x_prev(w.first)[l];
    double drift = 0.0, proj = 0.0, best = 0.0;
    for (std::size_t j = 1; j < J; ++j) {
      const std::size_t i = w.first + j - 1;
      drift += traj.gamma(i) * traj.hval(i)[l];
      proj += traj.P(i)[l];
      const double res = traj.x_prev(i + 1)[l] - x0 - drift + proj;
      best = std::max(best, std::abs(res));
    }
    total += best;
  }
  return total;
}

Vector integral_identity_at(const Trajectory &traj, std::int64_t N, double t) {
  const Window w = locate(traj, N);
  const Interpolant ip(traj, N, InterpolantKind::State);
  const Vector xt = ip(t);  // validates the range
  const std::size_t d = traj.dim();
  Vector out(d);
  for (std::size_t l = 0; l < d; ++l) {
    double drift = 0.0, proj = 0.0;
    std::size_t j = 0;
    while (j + 1 < w.count && grid_time(traj, w, j + 1) - w.t_origin <= t) {
      drift += traj.gamma(w.first + j) * traj.hval(w.first + j)[l];
      proj += traj.P(w.first + j)[l];
      ++j;
    }
    drift += (t - (grid_time(traj, w, j) - w.t_origin)) * traj.hval(w.first + j)[l];
    out[l] = xt[l] - traj.x_prev(w.first)[l] - drift + proj;
  }
  return out;
}

DiagnosticReport diagnostic_sweep(const Trajectory &traj,
                                  std::vector<std::int64_t> N_list, double T,
                                  const std::vector<double> &delta_list,
                                  double lipschitz_ceiling) {
  if (N_list.empty() || delta_list.empty()) {
    fail(ErrorCode::InvalidArgument, "N and delta lists must be non-empty");
  }
  std::sort(N_list.begin(), N_list.end());
  N_list.erase(std::unique(N_list.begin(), N_list.end()), N_list.end());

  DiagnosticReport rep;
  rep.T = T;
  rep.lipschitz_ceiling = lipschitz_ceiling;
  for (double delta : delta_list) {
    for (std::int64_t N : N_list) {
      DiagnosticRow row;
      row.N = N;
      row.delta = delta;
      row.partial_sum = partial_sum_stat(traj, N, delta);
      row.modulus_x = equicontinuity_modulus(traj, InterpolantKind::State, N, T, delta);
      row.modulus_z = equicontinuity_modulus(traj, InterpolantKind::ProjSum, N, T, delta);
      row.lipschitz_z = lipschitz_estimate_Z(traj, N, T, lipschitz_ceiling).estimate;
      row.integral_residual = integral_residual(traj, N, T);
      rep.rows.push_back(row);
    }
  }

  auto label = [](const char *stat, const DiagnosticRow &r) {
    std::ostringstream os;
    os << stat << "(N=" << r.N << ", delta=" << r.delta << ")";
    return os.str();
  };
  const std::size_t per = N_list.size();
  for (std::size_t b = 0; b < delta_list.size(); ++b) {
    const DiagnosticRow *rows = rep.rows.data() + b * per;
    for (std::size_t k = 1; k < per; ++k) {
      if (rows[k].partial_sum > rows[k - 1].partial_sum) {
        rep.violations.push_back(label("partial_sum_stat", rows[k]) +
                                 " exceeds the value at a smaller N");
      }
    }
    const DiagnosticRow &a = rows[0];
    const DiagnosticRow &z = rows[per - 1];
    if (per > 1) {
      auto trend = [&](const char *name, double first, double last) {
        if (first > 0.0 && !(last < first)) {
          rep.violations.push_back(label(name, z) + " did not decrease from " +
                                   label(name, a));
        }
      };
      trend("partial_sum_stat", a.partial_sum, z.partial_sum);
      trend("modulus_x", a.modulus_x, z.modulus_x);
      trend("modulus_z", a.modulus_z, z.modulus_z);
    }
    if (z.lipschitz_z > 1.05 * lipschitz_ceiling) {
      rep.violations.push_back(label("lipschitz_estimate_Z", z) +
                               " exceeds 1.05 times the ceiling");
    }
  }
  return rep;
}

}  // namespace projsa
