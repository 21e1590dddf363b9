//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "projsa/problems.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "projsa/error.hpp"

namespace projsa {

namespace {

void check_same_dim(const Box &box, const Vector &v, const char *what) {
  if (v.size() != box.dim()) {
    fail(ErrorCode::DimensionMismatch,
         std::string(what) + ": expected " + std::to_string(box.dim()) +
             " entries, got " + std::to_string(v.size()));
  }
}

void check_positive(const Vector &a) {
  for (double v : a) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      fail(ErrorCode::InvalidArgument, "problem.a_diag: entries must be positive");
    }
  }
}

struct Quadratic {
  Vector target;
  Vector a;

  double value(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - target[i];
      s += a[i] * d * d;
    }
    return 0.5 * s;
  }

  void drift(std::span<const double> x, std::span<double> out) const {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a[i] * (target[i] - x[i]);
  }

  // |grad f| is maximized coordinate-wise at the farther endpoint.
  double bound(const Box &box) const {
    double s = 0.0;
    for (std::size_t i = 0; i < box.dim(); ++i) {
      const double m = std::max(std::abs(a[i] * (box.lower(i) - target[i])),
                                std::abs(a[i] * (box.upper(i) - target[i])));
      s += m * m;
    }
    return std::sqrt(s);
  }
};

// Sign of the first-order set A (t - target) + dp(t) + N(t) relative to 0:
// zero when it contains 0, otherwise its signed distance to 0.
double signed_residual(double a, double target, const Penalty &pen, double lo,
                       double hi, double t) {
  const double one[1] = {t};
  const Interval g = clarke_interval(pen, one)[0];
  const double grad = a * (t - target);
  double left = grad + g.lo;
  double right = grad + g.hi;
  if (t == lo) left = -std::numeric_limits<double>::infinity();
  if (t == hi) right = std::numeric_limits<double>::infinity();
  if (left > 0.0) return left;
  if (right < 0.0) return right;
  return 0.0;
}

}  // namespace

std::vector<double> stationary_points_1d(double a, double target,
                                         const Penalty &pen, double lo,
                                         double hi, double step) {
  if (!(step > 0.0) || !(lo < hi)) {
    fail(ErrorCode::InvalidArgument, "stationary_points_1d: bad grid");
  }
  std::vector<double> grid;
  const auto cells = static_cast<std::int64_t>(std::ceil((hi - lo) / step));
  grid.reserve(static_cast<std::size_t>(cells) + 8);
  for (std::int64_t k = 0; k < cells; ++k) grid.push_back(lo + static_cast<double>(k) * step);
  grid.push_back(hi);
  // Kinks of the penalty, so exact zeros at the kinks are not stepped over.
  for (const auto &pc : pen.pieces()) {
    for (double knot : {pc.lo, -pc.lo, pc.hi, -pc.hi}) {
      if (std::isfinite(knot) && knot > lo && knot < hi) grid.push_back(knot);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  auto s = [&](double t) { return signed_residual(a, target, pen, lo, hi, t); };

  std::vector<double> found;
  double prev_t = grid.front();
  double prev_s = s(prev_t);
  if (prev_s == 0.0) found.push_back(prev_t);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double t = grid[k];
    const double cur = s(t);
    if (cur == 0.0) {
      found.push_back(t);
    } else if (prev_s != 0.0 && (prev_s < 0.0) != (cur < 0.0)) {
      double l = prev_t, r = t;
      const bool left_negative = prev_s < 0.0;
      for (int it = 0; it < 200 && r - l > 0.0; ++it) {
        const double m = l + (r - l) / 2;
        if (m <= l || m >= r) break;
        const double sm = s(m);
        if (sm == 0.0) {
          l = r = m;
          break;
        }
        if ((sm < 0.0) == left_negative) {
          l = m;
        } else {
          r = m;
        }
      }
      found.push_back(l + (r - l) / 2);
    }
    prev_t = t;
    prev_s = cur;
  }

  // Collapse runs of adjacent hits into one representative each.
  std::vector<double> merged;
  for (double t : found) {
    if (merged.empty() || t - merged.back() > 2.0 * step) merged.push_back(t);
  }
  return merged;
}

Problem make_quadratic(const Box &box, Vector target, Vector a_diag) {
  check_same_dim(box, target, "problem.target");
  check_same_dim(box, a_diag, "problem.a_diag");
  check_positive(a_diag);
  auto q = std::make_shared<Quadratic>(Quadratic{std::move(target), std::move(a_diag)});

  const Vector star = project_box(q->target, box);
  const double fmin = q->value(star);

  ProblemParts parts{"quadratic", box, nullptr, std::nullopt, std::nullopt,
                     std::nullopt, q->bound(box), ExplicitPoints{{star}}};
  parts.drift = [q](std::span<const double> x, std::span<double> out) {
    q->drift(x, out);
  };
  parts.objective = [q](std::span<const double> x) { return q->value(x); };
  parts.lyapunov = Lyapunov{
      [q, fmin](std::span<const double> x) { return q->value(x) - fmin; },
      [q](std::span<const double> x, std::span<double> out) {
        q->drift(x, out);
        for (double &v : out) v = -v;
      }};
  return Problem(std::move(parts));
}

Problem make_rotation(const Box &box, Vector target, double omega) {
  if (box.dim() != 2) {
    fail(ErrorCode::InvalidArgument, "rotation problem is two-dimensional");
  }
  check_same_dim(box, target, "problem.target");
  if (!std::isfinite(omega)) {
    fail(ErrorCode::InvalidArgument, "problem.omega: must be finite");
  }
  auto drift = [target, omega](std::span<const double> x, std::span<double> out) {
    const double d0 = target[0] - x[0];
    const double d1 = target[1] - x[1];
    out[0] = d0 + omega * d1;
    out[1] = -omega * d0 + d1;
  };
  // |M (target - x)| is convex in x, so its max over K sits at a corner.
  double bound = 0.0;
  for (int c = 0; c < 4; ++c) {
    const double corner[2] = {(c & 1) ? box.upper(0) : box.lower(0),
                              (c & 2) ? box.upper(1) : box.lower(1)};
    double h[2];
    drift(corner, h);
    bound = std::max(bound, norm2(h));
  }
  if (bound == 0.0) bound = 1.0;

  StationaryDescriptor stat = ResidualBased{1e-6};
  if (box.contains(target) && target[0] > box.lower(0) && target[0] < box.upper(0) &&
      target[1] > box.lower(1) && target[1] < box.upper(1)) {
    stat = ExplicitPoints{{target}};
  }
  ProblemParts parts{"rotation", box, drift, std::nullopt, std::nullopt,
                     std::nullopt, bound, stat};
  return Problem(std::move(parts));
}

Problem make_composite(const Box &box, Vector target, Vector a_diag,
                       const Penalty &pen) {
  check_same_dim(box, target, "problem.target");
  check_same_dim(box, a_diag, "problem.a_diag");
  check_positive(a_diag);
  auto q = std::make_shared<Quadratic>(Quadratic{target, a_diag});

  StationaryDescriptor stat = ResidualBased{1e-6};
  if (box.dim() <= 2) {
    std::vector<std::vector<double>> per_coord;
    for (std::size_t i = 0; i < box.dim(); ++i) {
      per_coord.push_back(stationary_points_1d(a_diag[i], target[i], pen,
                                               box.lower(i), box.upper(i), 1e-4));
    }
    std::vector<Vector> points{Vector{}};
    for (const auto &coord : per_coord) {
      std::vector<Vector> next;
      for (const auto &p : points) {
        for (double t : coord) {
          Vector e = p;
          e.push_back(t);
          next.push_back(std::move(e));
        }
      }
      points = std::move(next);
    }
    stat = ExplicitPoints{std::move(points)};
  }

  ProblemParts parts{"composite", box, nullptr, std::nullopt, pen,
                     std::nullopt, q->bound(box), std::move(stat)};
  parts.drift = [q](std::span<const double> x, std::span<double> out) {
    q->drift(x, out);
  };
  parts.objective = [q](std::span<const double> x) { return q->value(x); };
  return Problem(std::move(parts));
}

Problem make_pinned_drift(const Box &box, Vector direction) {
  check_same_dim(box, direction, "problem.direction");
  const double n = norm2(direction);
  if (!(n > 0.0) || !std::isfinite(n)) {
    fail(ErrorCode::InvalidArgument, "problem.direction: must be nonzero");
  }
  for (double &v : direction) v /= n;

  Vector corner(box.dim());
  bool all_pinned = true;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    if (direction[i] > 0.0) {
      corner[i] = box.upper(i);
    } else if (direction[i] < 0.0) {
      corner[i] = box.lower(i);
    } else {
      corner[i] = box.lower(i);
      all_pinned = false;
    }
  }
  StationaryDescriptor stat = ResidualBased{1e-9};
  if (all_pinned) stat = ExplicitPoints{{corner}};

  auto dir = std::make_shared<const Vector>(direction);
  ProblemParts parts{"pinned_drift", box, nullptr, std::nullopt, std::nullopt,
                     std::nullopt, 1.0, std::move(stat)};
  parts.drift = [dir](std::span<const double>, std::span<double> out) {
    std::copy(dir->begin(), dir->end(), out.begin());
  };
  // V(x) = <d, corner - x> >= 0 on K, with rate -|Pi_T(d)|^2.
  parts.lyapunov = Lyapunov{
      [dir, corner](std::span<const double> x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += (*dir)[i] * (corner[i] - x[i]);
        return s;
      },
      [dir](std::span<const double>, std::span<double> out) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = -(*dir)[i];
      }};
  return Problem(std::move(parts));
}

}  // namespace projsa
