// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotavg/random.hpp"

#include <cmath>
#include <numbers>

namespace rotavg {

double Random::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 1 - u lies in (0, 1], keeping the logarithm finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(theta);
  has_spare_ = true;
  return radius * std::cos(theta);
}

Eigen::Vector3d Random::unit_vector3() {
  for (;;) {
    Eigen::Vector3d v(normal(), normal(), normal());
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

Eigen::MatrixXd Random::normal_matrix(Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = normal();
  }
  return m;
}

}  // namespace rotavg
