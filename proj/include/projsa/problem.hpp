//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROJSA_PROBLEM_HPP
#define PROJSA_PROBLEM_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "projsa/geometry.hpp"
#include "projsa/prox.hpp"

namespace projsa {

/// Drift h, written into out (same dimension as x).
using DriftFn = std::function<void(std::span<const double> x, std::span<double> out)>;
using ScalarFn = std::function<double(std::span<const double> x)>;

struct Lyapunov {
  ScalarFn value;
  DriftFn gradient;
};

struct ExplicitPoints {
  std::vector<Vector> points;
};
/// S given only through the first-order residual; dist_to_stationary then
/// reports the residual, which is a surrogate rather than a metric distance.
struct ResidualBased {
  double tol;
};
using StationaryDescriptor = std::variant<ExplicitPoints, ResidualBased>;

struct ProblemParts {
  std::string id;
  Box box;
  DriftFn drift;
  std::optional<ScalarFn> objective;
  std::optional<Penalty> penalty;
  std::optional<Lyapunov> lyapunov;
  double drift_bound = 0.0;
  StationaryDescriptor stationary = ResidualBased{1e-6};
};

/// Immutable once built; safe to share across concurrent runs.
///
/// Construction samples 10^4 points of K to confirm |h| <= H (violations are
/// recorded as warnings) and, when f is present, checks central finite
/// differences of f against -h at 100 interior points (violations throw).
class Problem {
 public:
  explicit Problem(ProblemParts parts);

  const std::string &id() const noexcept { return p_.id; }
  const Box &box() const noexcept { return p_.box; }
  std::size_t dim() const noexcept { return p_.box.dim(); }
  double drift_bound() const noexcept { return p_.drift_bound; }
  const std::optional<ScalarFn> &objective() const noexcept { return p_.objective; }
  const std::optional<Penalty> &penalty() const noexcept { return p_.penalty; }
  const std::optional<Lyapunov> &lyapunov() const noexcept { return p_.lyapunov; }
  const StationaryDescriptor &stationary() const noexcept { return p_.stationary; }
  const std::vector<std::string> &warnings() const noexcept { return warnings_; }

  void drift(std::span<const double> x, std::span<double> out) const {
    p_.drift(x, out);
  }
  Vector drift(std::span<const double> x) const;

 private:
  ProblemParts p_;
  std::vector<std::string> warnings_;
};

}  // namespace projsa

#endif  // PROJSA_PROBLEM_HPP
