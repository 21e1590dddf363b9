//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROJSA_SELFTEST_HPP
#define PROJSA_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "projsa/prox.hpp"

namespace projsa {

struct SelftestOptions {
  std::int64_t instances = 10000;
  std::uint64_t seed = 0;
  double tolerance = 1e-5;
  /// Test hook: hand the prox a penalty with the sign of lambda flipped
  /// while the oracle keeps the true one.
  bool corrupt_lambda_sign = false;
};

struct SelftestCase {
  PenaltyKind kind = PenaltyKind::Zero;
  bool boxed = false;
  double lambda = 0.0, shape = 0.0, gamma = 0.0, v = 0.0;
  double lo = 0.0, hi = 0.0;
  double prox = 0.0, oracle = 0.0;
};

struct SelftestVariant {
  std::string name;
  std::int64_t instances = 0;
  double max_error = 0.0;
  SelftestCase worst;
};

struct SelftestReport {
  std::vector<SelftestVariant> variants;
  double max_error = 0.0;
  bool pass = false;
};

/// Brute-force minimizer of p(y) + (v - y)^2 / (2 gamma) over [lo, hi]
/// (infinite bounds allowed): a 1e-3 grid locates every basin, each of which
/// is then resolved on a 1e-6 grid. The penalty is evaluated from its own
/// closed form, not through the prox code.
double grid_oracle_prox(PenaltyKind kind, double lambda, double shape,
                        double v, double gamma, double lo, double hi);

/// Random comparison of prox1 / prox1_box against the grid oracle for L1,
/// MCP, SCAD and Zero, each with and without a box.
SelftestReport run_prox_selftest(const SelftestOptions &opts);

}  // namespace projsa

#endif  // PROJSA_SELFTEST_HPP
