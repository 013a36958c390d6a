// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>

namespace rotavg {

/// Seeded generator with a fully specified algorithm: std::mt19937_64 for
/// raw bits, 53-bit uniform doubles and Box-Muller normals. The standard
/// library distributions are implementation-defined, so they are not used
/// where reproducibility across toolchains matters.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal.
  double normal();

  /// Uniform on the unit sphere in R^3 (normalized Gaussian draw).
  Eigen::Vector3d unit_vector3();

  Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rotavg
