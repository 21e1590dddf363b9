//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROJSA_PROX_HPP
#define PROJSA_PROX_HPP

#include <span>
#include <string>
#include <vector>

#include "projsa/geometry.hpp"

namespace projsa {

enum class PenaltyKind { Zero, L1, MCP, SCAD };

/// Separable penalty g(x) = sum_i p(x_i).
///
///   L1:   p(t) = lambda |t|
///   MCP:  p(t) = lambda |t| - t^2 / (2 beta)         for |t| <= beta lambda,
///                beta lambda^2 / 2                   otherwise      (beta > 1)
///   SCAD: p(t) = lambda |t|                          for |t| <= lambda,
///                (2 a lambda |t| - t^2 - lambda^2) / (2 (a - 1))
///                                                    for |t| <= a lambda,
///                lambda^2 (a + 1) / 2                otherwise      (a > 2)
///
/// The second parameter is beta for MCP and a for SCAD.
class Penalty {
 public:
  Penalty() = default;

  static Penalty zero() { return {}; }
  static Penalty l1(double lambda);
  static Penalty mcp(double lambda, double beta);
  static Penalty scad(double lambda, double a);

  /// Skips parameter validation. Only the prox self-test uses this, to
  /// inject a corrupted penalty.
  static Penalty unchecked(PenaltyKind kind, double lambda, double shape);

  PenaltyKind kind() const noexcept { return kind_; }
  double lambda() const noexcept { return lambda_; }
  double shape() const noexcept { return shape_; }
  std::string name() const;

  /// One quadratic piece c0 + c1 t + c2 t^2 of p on [lo, hi], t >= 0.
  struct Piece {
    double lo, hi;
    double c0, c1, c2;
  };
  /// Pieces covering [0, inf) in order; p(-t) = p(t).
  std::vector<Piece> pieces() const;

  double value1(double t) const;

  friend bool operator==(const Penalty &, const Penalty &) = default;

 private:
  Penalty(PenaltyKind kind, double lambda, double shape)
      : kind_(kind), lambda_(lambda), shape_(shape) {}

  PenaltyKind kind_ = PenaltyKind::Zero;
  double lambda_ = 0.0;
  double shape_ = 0.0;
};

struct Interval {
  double lo;
  double hi;
};

/// Per-coordinate Clarke subdifferential.
using SubgradientInterval = std::vector<Interval>;

double penalty_value(const Penalty &pen, std::span<const double> x);

SubgradientInterval clarke_interval(const Penalty &pen,
                                    std::span<const double> x);

/// Coordinate-wise argmin_y p(y) + (v - y)^2 / (2 gamma). Global minimizer
/// picked by candidate enumeration; ties go to the smallest |y|.
Vector prox_penalty(const Penalty &pen, std::span<const double> v,
                    double gamma);

/// Same objective restricted to the box, i.e. prox of gamma (g + I_K).
Vector prox_penalty_box(const Penalty &pen, std::span<const double> v,
                        double gamma, const Box &box);

/// Scalar versions used by the vector routines and the self-test.
double prox1(const Penalty &pen, double v, double gamma);
double prox1_box(const Penalty &pen, double v, double gamma, double lo,
                 double hi);

/// 1-D prox objective p(y) + (v - y)^2 / (2 gamma).
double prox_objective(const Penalty &pen, double y, double v, double gamma);

}  // namespace projsa

#endif  // PROJSA_PROX_HPP
