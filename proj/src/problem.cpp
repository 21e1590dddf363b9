//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "projsa/problem.hpp"

#include <cmath>
#include <sstream>

#include "projsa/error.hpp"
#include "projsa/rng.hpp"

namespace projsa {

namespace {

constexpr int kBoundSamples = 10000;
constexpr int kGradientSamples = 100;
constexpr double kGradientTol = 1e-4;

Vector sample_point(const Box &box, const RngState &rng, std::uint64_t step,
                    double shrink) {
  Vector x(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const double a = box.lower(i), b = box.upper(i);
    const double margin = shrink * (b - a);
    x[i] = (a + margin) + (b - a - 2 * margin) * rng.uniform(step, i);
  }
  return x;
}

}  // namespace

Problem::Problem(ProblemParts parts) : p_(std::move(parts)) {
  if (!p_.drift) {
    fail(ErrorCode::InvalidArgument, "problem " + p_.id + ": drift is required");
  }
  if (!(p_.drift_bound > 0.0) || !std::isfinite(p_.drift_bound)) {
    fail(ErrorCode::InvalidArgument,
         "problem " + p_.id + ": drift bound H must be positive");
  }
  if (const auto *pts = std::get_if<ExplicitPoints>(&p_.stationary)) {
    for (const auto &p : pts->points) p_.box.check_dim(p, "stationary point");
  }

  const RngState rng{0x5eedULL, 0xb0c5ULL, 0};
  Vector h(dim());

  double worst = 0.0;
  int violations = 0;
  for (int k = 0; k < kBoundSamples; ++k) {
    const Vector x = sample_point(p_.box, rng, static_cast<std::uint64_t>(k), 0.0);
    p_.drift(x, h);
    const double nh = norm2(h);
    if (!std::isfinite(nh) || nh > p_.drift_bound * (1.0 + 1e-12)) {
      ++violations;
      worst = std::max(worst, nh);
    }
  }
  if (violations > 0) {
    std::ostringstream os;
    os << "problem " << p_.id << ": |h| exceeded H = " << p_.drift_bound
       << " at " << violations << " of " << kBoundSamples
       << " sampled points (max " << worst << ")";
    warnings_.push_back(os.str());
  }

  if (p_.objective) {
    const auto &f = *p_.objective;
    for (int k = 0; k < kGradientSamples; ++k) {
      Vector x = sample_point(p_.box, rng,
                              static_cast<std::uint64_t>(kBoundSamples + k), 0.01);
      p_.drift(x, h);
      for (std::size_t i = 0; i < dim(); ++i) {
        const double eps = 1e-6 * (p_.box.upper(i) - p_.box.lower(i));
        const double xi = x[i];
        x[i] = xi + eps;
        const double fp = f(x);
        x[i] = xi - eps;
        const double fm = f(x);
        x[i] = xi;
        const double fd = (fp - fm) / (2 * eps);
        if (!(std::abs(fd + h[i]) <= kGradientTol)) {
          std::ostringstream os;
          os << "problem " << p_.id << ": finite differences of f disagree "
             << "with -h in coordinate " << i << " (" << fd << " vs "
             << -h[i] << ")";
          fail(ErrorCode::InvalidArgument, os.str());
        }
      }
    }
  }
}

Vector Problem::drift(std::span<const double> x) const {
  p_.box.check_dim(x, "drift");
  Vector out(x.size());
  p_.drift(x, out);
  return out;
}

}  // namespace projsa
