// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rotavg/cycle.hpp"
#include "rotavg/graph.hpp"
#include "rotavg/random.hpp"

#include <cstdint>

namespace rotavg {

struct NoiseSpec {
  /// Standard deviation of the perturbation angle, radians.
  double sigma = 0.0;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument on a negative or non-finite sigma.
  void validate() const;
};

/// exp(theta [n]x) with theta ~ N(0, sigma^2) and n uniform on the sphere.
/// Draw order: theta first, then the three axis coordinates.
Rotation sample_perturbation(double sigma, Random& rng);

/// Uniform (Haar) random rotation from a normalized Gaussian quaternion.
Rotation random_rotation(Random& rng);

struct SyntheticCycle {
  CycleProblem problem;
  /// R_i = Rz(2 pi i / n).
  RotationStack latent;
};

/// Circular trajectory with measurements R_i R_{i+1}^T exp(theta [n]x).
/// Throws std::invalid_argument for n < 3.
SyntheticCycle make_cycle_problem(int n, const NoiseSpec& spec);

struct SyntheticGraph {
  PoseGraph graph;
  RotationStack latent;
  /// Second smallest eigenvalue of the scalar graph Laplacian.
  double fiedler = 0.0;
  /// |A~ - A|_2 against the noiseless adjacency.
  double noise_norm = 0.0;
  /// Graph draws needed to obtain a connected graph with a cycle.
  int attempts = 0;
};

/// Erdos-Renyi graph G(n, density) conditioned on being connected with at
/// least one cycle, Haar-random latent rotations and the cycle noise model.
/// Throws std::runtime_error when 100 draws fail.
SyntheticGraph make_random_problem(int n, double density, const NoiseSpec& spec);

}  // namespace rotavg
