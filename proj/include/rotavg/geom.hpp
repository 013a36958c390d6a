// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <vector>

namespace rotavg {

/// Small square matrix of dimension at most 3, stored inline.
using Block = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                            Eigen::ColMajor, 3, 3>;

/// Element of SO(2) or SO(3).
///
/// Construction through from_matrix() validates orthogonality and the
/// determinant. Products and transposes of valid rotations are trusted and
/// not re-validated.
class Rotation {
 public:
  static constexpr double kDefaultTolerance = 1e-12;

  Rotation() : Rotation(identity(3)) {}

  static Rotation identity(int dim);

  /// Throws std::invalid_argument if `m` is not in SO(p), p in {2,3}.
  static Rotation from_matrix(const Block& m,
                              double tol = kDefaultTolerance);

  /// Wraps `m` without any check. For results that are rotations by
  /// construction.
  static Rotation trusted(const Block& m) { return Rotation(m); }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Block& matrix() const { return m_; }
  double operator()(int r, int c) const { return m_(r, c); }

  Rotation operator*(const Rotation& other) const;
  Rotation transpose() const { return Rotation(m_.transpose()); }
  double trace() const { return m_.trace(); }

 private:
  explicit Rotation(const Block& m) : m_(m) {}
  Block m_;
};

/// Rotation about the z axis (SO(3)).
Rotation rotation_z(double angle);
/// Planar rotation (SO(2)).
Rotation rotation_2d(double angle);

struct AxisAngle {
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  double angle = 0.0;
};

struct Projection {
  Rotation rotation;
  /// Nearest rotation is not unique: sigma_{p-1} + sign(det M) sigma_p is
  /// within 1e-9 of zero.
  bool degenerate = false;
};

/// Nearest rotation in Frobenius norm, via SVD with the last singular
/// direction flipped when det(U V^T) = -1.
Projection project_to_rotation(const Block& m);

/// Angle in [0, pi] with the axis taken from the skew part. The identity
/// maps to axis (0,0,1); at angle pi the axis sign is fixed so that its first
/// nonzero component is positive. For SO(2) the signed angle is returned
/// with the implicit z axis.
AxisAngle angle_axis_of(const Rotation& r);

/// Rodrigues formula. Throws std::invalid_argument on a non-unit axis.
Rotation exp_angle_axis(const AxisAngle& a);

/// Wraps to [-pi, pi]; pi itself is kept as pi.
double wrap_angle(double angle);

/// Angle of `r` measured about `axis`, in [-pi, pi]. For SO(2) the axis is
/// ignored and the planar angle is returned.
double signed_angle_about(const Rotation& r, const Eigen::Vector3d& axis);

struct NthRoot {
  /// Root label; angle before wrapping is gamma/n - 2 k pi / n.
  int k = 0;
  /// Wrapped to [-pi, pi].
  double angle = 0.0;
  Rotation rotation;
};

struct NthRoots {
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  /// Angle of the input about `axis`.
  double gamma = 0.0;
  /// True when the input is the identity and the (0,0,1) axis was used.
  bool conventional_axis = false;
  std::vector<NthRoot> roots;
};

/// All n rotations E_k sharing the axis of `e` with E_k^n = e.
NthRoots nth_roots(const Rotation& e, int n);

/// Integer power of a rotation about its own axis, computed through the
/// axis-angle form rather than repeated products.
Rotation rotation_power(const AxisAngle& a, int exponent);

/// Geodesic angle between two rotations, in [0, pi].
double angular_distance(const Rotation& a, const Rotation& b);

}  // namespace rotavg
