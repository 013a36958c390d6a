// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotavg/geom.hpp"

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rotavg {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dim(int rows, int cols) {
  if (rows != cols || (rows != 2 && rows != 3)) {
    throw std::invalid_argument("rotation matrices must be 2x2 or 3x3, got " +
                                std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
}

Eigen::Vector3d vee_of_skew_part(const Block& r) {
  return {r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1)};
}

// First component with magnitude above 1e-12 is made positive.
Eigen::Vector3d lexicographic_sign(Eigen::Vector3d v) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0) v = -v;
      break;
    }
  }
  return v;
}

}  // namespace

Rotation Rotation::identity(int dim) {
  require_dim(dim, dim);
  return Rotation(Block::Identity(dim, dim));
}

Rotation Rotation::from_matrix(const Block& m, double tol) {
  require_dim(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  if (!m.allFinite()) {
    throw std::invalid_argument("rotation matrix has non-finite entries");
  }
  const int p = static_cast<int>(m.rows());
  const double orth = (m.transpose() * m - Block::Identity(p, p)).norm();
  if (orth > tol) {
    throw std::invalid_argument("matrix is not orthogonal (|R^T R - I|_F = " +
                                std::to_string(orth) + ")");
  }
  if (std::abs(m.determinant() - 1.0) > tol) {
    throw std::invalid_argument("matrix has determinant != 1");
  }
  return Rotation(m);
}

Rotation Rotation::operator*(const Rotation& other) const {
  if (dim() != other.dim()) {
    throw std::invalid_argument("cannot compose rotations of different dimension");
  }
  return Rotation(m_ * other.m_);
}

Rotation rotation_z(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Block m(3, 3);
  m << c, -s, 0, s, c, 0, 0, 0, 1;
  return Rotation::trusted(m);
}

Rotation rotation_2d(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Block m(2, 2);
  m << c, -s, s, c;
  return Rotation::trusted(m);
}

Projection project_to_rotation(const Block& m) {
  require_dim(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  if (!m.allFinite()) {
    throw std::invalid_argument("cannot project a non-finite matrix");
  }
  const int p = static_cast<int>(m.rows());
  Eigen::JacobiSVD<Block> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Block u = svd.matrixU();
  const Block& v = svd.matrixV();
  const auto& sv = svd.singularValues();
  const double d = (u * v.transpose()).determinant() < 0 ? -1.0 : 1.0;
  if (d < 0) u.col(p - 1) *= -1.0;

  Projection out;
  out.rotation = Rotation::trusted(u * v.transpose());
  const double scale = std::max(1.0, sv[0]);
  out.degenerate = sv[p - 2] + d * sv[p - 1] <= 1e-9 * scale;
  return out;
}

AxisAngle angle_axis_of(const Rotation& r) {
  const Block& m = r.matrix();
  AxisAngle out;
  if (r.dim() == 2) {
    out.angle = std::atan2(m(1, 0), m(0, 0));
    return out;
  }
  const Eigen::Vector3d vee = vee_of_skew_part(m);
  const double s = 0.5 * vee.norm();
  const double c = 0.5 * (m.trace() - 1.0);
  if (s == 0.0 && c > 0.0) {
    return out;  // identity
  }
  if (s < 1e-12 && c < 0.0) {
    // Angle pi: n n^T = (R + I) / 2.
    const Eigen::Matrix3d sym =
        0.5 * (m + m.transpose()) + Eigen::Matrix3d::Identity();
    int col = 0;
    sym.diagonal().maxCoeff(&col);
    out.axis = lexicographic_sign(sym.col(col).normalized());
    out.angle = kPi;
    return out;
  }
  out.angle = std::atan2(s, c);
  if (c > -0.5) {
    out.axis = vee / vee.norm();
  } else {
    // Near pi the skew part is small; take the axis from the symmetric part
    // and the sign from the skew part.
    const Eigen::Matrix3d sym =
        0.5 * (m + m.transpose()) - c * Eigen::Matrix3d::Identity();
    int col = 0;
    sym.diagonal().maxCoeff(&col);
    Eigen::Vector3d axis = sym.col(col).normalized();
    if (axis.dot(vee) < 0) axis = -axis;
    out.axis = axis;
  }
  return out;
}

Rotation exp_angle_axis(const AxisAngle& a) {
  if (std::abs(a.axis.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("axis must be a unit vector");
  }
  const Eigen::Matrix3d m =
      Eigen::AngleAxisd(a.angle, a.axis.normalized()).toRotationMatrix();
  return Rotation::trusted(m);
}

double wrap_angle(double angle) {
  if (angle >= -kPi && angle <= kPi) return angle;
  double w = std::remainder(angle, 2.0 * kPi);
  if (w < -kPi) w += 2.0 * kPi;
  if (w > kPi) w -= 2.0 * kPi;
  return w;
}

double signed_angle_about(const Rotation& r, const Eigen::Vector3d& axis) {
  const Block& m = r.matrix();
  if (r.dim() == 2) return std::atan2(m(1, 0), m(0, 0));
  const double s = 0.5 * vee_of_skew_part(m).dot(axis.normalized());
  const double c = 0.5 * (m.trace() - 1.0);
  return std::atan2(s, c);
}

Rotation rotation_power(const AxisAngle& a, int exponent) {
  AxisAngle scaled = a;
  scaled.angle = a.angle * exponent;
  return exp_angle_axis(scaled);
}

NthRoots nth_roots(const Rotation& e, int n) {
  if (n < 1) throw std::invalid_argument("nth_roots requires n >= 1");
  NthRoots out;
  const AxisAngle aa = angle_axis_of(e);
  out.axis = aa.axis;
  out.gamma = aa.angle;
  out.conventional_axis = e.dim() == 3 && aa.angle == 0.0;
  out.roots.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double raw = (aa.angle - 2.0 * kPi * k) / n;
    NthRoot root;
    root.k = k;
    root.angle = wrap_angle(raw);
    root.rotation = e.dim() == 2 ? rotation_2d(raw)
                                 : exp_angle_axis(AxisAngle{aa.axis, raw});
    out.roots.push_back(root);
  }
  return out;
}

double angular_distance(const Rotation& a, const Rotation& b) {
  return std::abs(angle_axis_of(a.transpose() * b).angle);
}

}  // namespace rotavg
