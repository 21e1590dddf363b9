//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "projsa/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "projsa/error.hpp"

namespace projsa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_lambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    fail(ErrorCode::InvalidArgument, "penalty.lambda: must be nonnegative");
  }
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    fail(ErrorCode::InvalidArgument, "prox: gamma must be positive");
  }
}

}  // namespace

Penalty Penalty::l1(double lambda) {
  check_lambda(lambda);
  return {PenaltyKind::L1, lambda, 0.0};
}

Penalty Penalty::mcp(double lambda, double beta) {
  check_lambda(lambda);
  if (!(beta > 1.0) || !std::isfinite(beta)) {
    fail(ErrorCode::InvalidArgument, "penalty.beta: MCP needs beta > 1");
  }
  return {PenaltyKind::MCP, lambda, beta};
}

Penalty Penalty::scad(double lambda, double a) {
  check_lambda(lambda);
  if (!(a > 2.0) || !std::isfinite(a)) {
    fail(ErrorCode::InvalidArgument, "penalty.a: SCAD needs a > 2");
  }
  return {PenaltyKind::SCAD, lambda, a};
}

Penalty Penalty::unchecked(PenaltyKind kind, double lambda, double shape) {
  return {kind, lambda, shape};
}

std::string Penalty::name() const {
  switch (kind_) {
    case PenaltyKind::Zero: return "zero";
    case PenaltyKind::L1: return "l1";
    case PenaltyKind::MCP: return "mcp";
    case PenaltyKind::SCAD: return "scad";
  }
  return "unknown";
}

std::vector<Penalty::Piece> Penalty::pieces() const {
  const double l = lambda_;
  switch (kind_) {
    case PenaltyKind::Zero:
      return {{0.0, kInf, 0.0, 0.0, 0.0}};
    case PenaltyKind::L1:
      return {{0.0, kInf, 0.0, l, 0.0}};
    case PenaltyKind::MCP: {
      const double b = shape_;
      return {{0.0, b * l, 0.0, l, -1.0 / (2.0 * b)},
              {b * l, kInf, b * l * l / 2.0, 0.0, 0.0}};
    }
    case PenaltyKind::SCAD: {
      const double a = shape_;
      return {{0.0, l, 0.0, l, 0.0},
              {l, a * l, -l * l / (2.0 * (a - 1.0)), a * l / (a - 1.0),
               -1.0 / (2.0 * (a - 1.0))},
              {a * l, kInf, l * l * (a + 1.0) / 2.0, 0.0, 0.0}};
    }
  }
  return {};
}

double Penalty::value1(double t) const {
  const double u = std::abs(t);
  const double l = lambda_;
  switch (kind_) {
    case PenaltyKind::Zero:
      return 0.0;
    case PenaltyKind::L1:
      return l * u;
    case PenaltyKind::MCP: {
      const double b = shape_;
      return u <= b * l ? l * u - u * u / (2.0 * b) : b * l * l / 2.0;
    }
    case PenaltyKind::SCAD: {
      const double a = shape_;
      if (u <= l) return l * u;
      if (u <= a * l) return (2.0 * a * l * u - u * u - l * l) / (2.0 * (a - 1.0));
      return l * l * (a + 1.0) / 2.0;
    }
  }
  return 0.0;
}

double penalty_value(const Penalty &pen, std::span<const double> x) {
  double s = 0.0;
  for (double t : x) s += pen.value1(t);
  return s;
}

SubgradientInterval clarke_interval(const Penalty &pen,
                                    std::span<const double> x) {
  SubgradientInterval out(x.size());
  const double l = pen.lambda();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = x[i];
    const double u = std::abs(t);
    const double sgn = t > 0.0 ? 1.0 : -1.0;
    double d = 0.0;
    switch (pen.kind()) {
      case PenaltyKind::Zero:
        out[i] = {0.0, 0.0};
        continue;
      case PenaltyKind::L1:
        d = l;
        break;
      case PenaltyKind::MCP:
        d = u <= pen.shape() * l ? l - u / pen.shape() : 0.0;
        break;
      case PenaltyKind::SCAD: {
        const double a = pen.shape();
        d = u <= l ? l : (u <= a * l ? (a * l - u) / (a - 1.0) : 0.0);
        break;
      }
    }
    if (t == 0.0) {
      out[i] = {-l, l};
    } else {
      out[i] = {sgn * d, sgn * d};
    }
  }
  return out;
}

double prox_objective(const Penalty &pen, double y, double v, double gamma) {
  const double r = v - y;
  return pen.value1(y) + r * r / (2.0 * gamma);
}

namespace {

struct Best {
  double y = 0.0;
  double obj = kInf;
  bool any = false;
};

void consider(Best &best, const Penalty &pen, double y, double v,
              double gamma) {
  const double obj = prox_objective(pen, y, v, gamma);
  if (!best.any || obj < best.obj) {
    best = {y, obj, true};
    return;
  }
  if (obj == best.obj) {
    const double ay = std::abs(y), ab = std::abs(best.y);
    // smaller |y| first, then the sign of v
    if (ay < ab || (ay == ab && std::signbit(y) == std::signbit(v))) {
      best = {y, obj, true};
    }
  }
}

// Stationary point of c0 + c1 y + c2 y^2 + (v - y)^2 / (2 gamma) with the
// linear coefficient mirrored on the negative side.
bool piece_stationary(const Penalty::Piece &pc, double v, double gamma,
                      double sign, double &y) {
  if (pc.c1 == 0.0 && pc.c2 == 0.0) {
    y = v;
    return true;
  }
  const double denom = 2.0 * pc.c2 + 1.0 / gamma;
  if (denom == 0.0) return false;
  y = (v / gamma - sign * pc.c1) / denom;
  return std::isfinite(y);
}

template <class Visit>
void enumerate_candidates(const Penalty &pen, double v, double gamma,
                          Visit &&visit) {
  for (const auto &pc : pen.pieces()) {
    double y;
    if (piece_stationary(pc, v, gamma, 1.0, y)) visit(std::clamp(y, pc.lo, pc.hi));
    if (piece_stationary(pc, v, gamma, -1.0, y)) visit(std::clamp(y, -pc.hi, -pc.lo));
    visit(pc.lo);
    visit(-pc.lo);
    if (std::isfinite(pc.hi)) {
      visit(pc.hi);
      visit(-pc.hi);
    }
  }
}

}  // namespace

double prox1(const Penalty &pen, double v, double gamma) {
  if (pen.kind() == PenaltyKind::Zero) return v;
  Best best;
  enumerate_candidates(pen, v, gamma,
                       [&](double y) { consider(best, pen, y, v, gamma); });
  return best.y;
}

double prox1_box(const Penalty &pen, double v, double gamma, double lo,
                 double hi) {
  Best best;
  enumerate_candidates(pen, v, gamma, [&](double y) {
    consider(best, pen, std::clamp(y, lo, hi), v, gamma);
  });
  consider(best, pen, lo, v, gamma);
  consider(best, pen, hi, v, gamma);
  return best.y;
}

Vector prox_penalty(const Penalty &pen, std::span<const double> v,
                    double gamma) {
  check_gamma(gamma);
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = prox1(pen, v[i], gamma);
  return out;
}

Vector prox_penalty_box(const Penalty &pen, std::span<const double> v,
                        double gamma, const Box &box) {
  check_gamma(gamma);
  box.check_dim(v, "prox_penalty_box");
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = prox1_box(pen, v[i], gamma, box.lower(i), box.upper(i));
  }
  return out;
}

}  // namespace projsa
