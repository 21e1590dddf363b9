//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROJSA_GEOMETRY_HPP
#define PROJSA_GEOMETRY_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace projsa {

using Vector = std::vector<double>;

/// Closed hyperrectangle prod_i [lower_i, upper_i] with lower_i < upper_i.
class Box {
 public:
  Box(Vector lower, Vector upper);

  /// [lo, hi]^dim
  static Box cube(std::size_t dim, double lo, double hi);

  std::size_t dim() const noexcept { return lower_.size(); }
  const Vector &lower() const noexcept { return lower_; }
  const Vector &upper() const noexcept { return upper_; }
  double lower(std::size_t i) const { return lower_[i]; }
  double upper(std::size_t i) const { return upper_[i]; }
  double max_width() const noexcept;
  double min_width() const noexcept;

  /// 1e-9 times the widest side.
  double default_face_tolerance() const noexcept;

  bool contains(std::span<const double> x, double tol = 0.0) const;
  void check_dim(std::span<const double> x, const char *what) const;

  friend bool operator==(const Box &, const Box &) = default;

 private:
  Vector lower_;
  Vector upper_;
};

enum class Face : std::uint8_t { Interior, AtLower, AtUpper };

/// Per-coordinate face tags of a point of K. This is a lossless finite
/// representation of both N_K(x) and T_K(x) for a box.
using FaceSignature = std::vector<Face>;

Vector project_box(std::span<const double> x, const Box &box);

FaceSignature face_signature(std::span<const double> x, const Box &box,
                             double tol);
FaceSignature face_signature(std::span<const double> x, const Box &box);

/// v in N_K(x), where sig = face_signature(x).
bool in_normal_cone(std::span<const double> v, const FaceSignature &sig);

/// Euclidean projection of v onto T_K(x).
Vector project_tangent(std::span<const double> v, const FaceSignature &sig);

/// Distance from 0 to {c} + [lo, hi] + (-N_i), where -N_i is {0} for an
/// interior coordinate, [0, inf) on the lower face and (-inf, 0] on the upper
/// face. lo/hi may be infinite; the result is always finite.
double dist_to_normal_cone_shifted(double c, double lo, double hi, Face tag);

/// Residual of the projection y -> clamp(y): the P term of one projected
/// step x + s -> x_next. Computed so that |P_i| <= |s_i| and the sign
/// conditions of N_K(x_next) hold exactly in floating point.
double projection_term(double x, double s, double y, double x_next, double lo,
                       double hi);

double norm2(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace projsa

#endif  // PROJSA_GEOMETRY_HPP
