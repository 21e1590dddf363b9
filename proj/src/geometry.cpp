//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "projsa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "projsa/error.hpp"

namespace projsa {

Box::Box(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) {
    fail(ErrorCode::InvalidArgument, "box: dimension must be at least 1");
  }
  if (lower_.size() != upper_.size()) {
    fail(ErrorCode::DimensionMismatch,
         "box: lower has " + std::to_string(lower_.size()) +
             " entries, upper has " + std::to_string(upper_.size()));
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) ||
        !(lower_[i] < upper_[i])) {
      fail(ErrorCode::InvalidArgument,
           "box: coordinate " + std::to_string(i) +
               " needs finite lower < upper");
    }
  }
}

Box Box::cube(std::size_t dim, double lo, double hi) {
  return Box(Vector(dim, lo), Vector(dim, hi));
}

double Box::max_width() const noexcept {
  double w = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) w = std::max(w, upper_[i] - lower_[i]);
  return w;
}

double Box::min_width() const noexcept {
  double w = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dim(); ++i) w = std::min(w, upper_[i] - lower_[i]);
  return w;
}

double Box::default_face_tolerance() const noexcept {
  return 1e-9 * max_width();
}

bool Box::contains(std::span<const double> x, double tol) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!(x[i] >= lower_[i] - tol && x[i] <= upper_[i] + tol)) return false;
  }
  return true;
}

void Box::check_dim(std::span<const double> x, const char *what) const {
  if (x.size() != dim()) {
    fail(ErrorCode::DimensionMismatch,
         std::string(what) + ": expected dimension " + std::to_string(dim()) +
             ", got " + std::to_string(x.size()));
  }
}

Vector project_box(std::span<const double> x, const Box &box) {
  box.check_dim(x, "project_box");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::clamp(x[i], box.lower(i), box.upper(i));
  }
  return out;
}

FaceSignature face_signature(std::span<const double> x, const Box &box,
                             double tol) {
  box.check_dim(x, "face_signature");
  if (!(tol > 0.0) || !(tol < box.min_width() / 2)) {
    fail(ErrorCode::InvalidArgument,
         "face_signature: tolerance must lie in (0, min width / 2)");
  }
  FaceSignature sig(x.size(), Face::Interior);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = box.lower(i);
    const double b = box.upper(i);
    if (!(x[i] >= a - tol && x[i] <= b + tol)) {
      fail(ErrorCode::OutOfRange, "face_signature: coordinate " +
                                      std::to_string(i) +
                                      " lies outside the box");
    }
    if (std::abs(x[i] - a) <= tol) {
      sig[i] = Face::AtLower;
    } else if (std::abs(x[i] - b) <= tol) {
      sig[i] = Face::AtUpper;
    }
  }
  return sig;
}

FaceSignature face_signature(std::span<const double> x, const Box &box) {
  return face_signature(x, box, box.default_face_tolerance());
}

bool in_normal_cone(std::span<const double> v, const FaceSignature &sig) {
  if (v.size() != sig.size()) {
    fail(ErrorCode::DimensionMismatch, "in_normal_cone: dimension mismatch");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    switch (sig[i]) {
      case Face::Interior:
        if (v[i] != 0.0) return false;
        break;
      case Face::AtLower:
        if (!(v[i] <= 0.0)) return false;
        break;
      case Face::AtUpper:
        if (!(v[i] >= 0.0)) return false;
        break;
    }
  }
  return true;
}

Vector project_tangent(std::span<const double> v, const FaceSignature &sig) {
  if (v.size() != sig.size()) {
    fail(ErrorCode::DimensionMismatch, "project_tangent: dimension mismatch");
  }
  Vector out(v.begin(), v.end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sig[i] == Face::AtLower) {
      out[i] = std::max(v[i], 0.0);
    } else if (sig[i] == Face::AtUpper) {
      out[i] = std::min(v[i], 0.0);
    }
  }
  return out;
}

double dist_to_normal_cone_shifted(double c, double lo, double hi, Face tag) {
  if (std::isnan(lo) || std::isnan(hi) || std::isnan(c) || lo > hi) {
    fail(ErrorCode::InvalidArgument,
         "dist_to_normal_cone_shifted: need interval_lo <= interval_hi");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  double left = c + lo;
  double right = c + hi;
  if (tag == Face::AtLower) right = inf;
  if (tag == Face::AtUpper) left = -inf;
  if (left > 0.0) return left;
  if (right < 0.0) return -right;
  return 0.0;
}

double projection_term(double x, double s, double y, double x_next, double lo,
                       double hi) {
  // x + s - x_next evaluated as (x - face) + s. Rounding is monotone, so the
  // result never exceeds s in magnitude, and it is clipped to the cone sign.
  if (y > hi && x_next == hi) return std::max(0.0, (x - hi) + s);
  if (y < lo && x_next == lo) return std::min(0.0, (x - lo) + s);
  return y - x_next;
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    fail(ErrorCode::DimensionMismatch, "dot: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace projsa
