// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotavg/synth.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace rotavg {

namespace {

constexpr int kMaxGraphDraws = 100;

bool connected(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (const auto& [i, j] : pairs) {
    const int a = find(i), b = find(j);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

}  // namespace

void NoiseSpec::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be finite and >= 0");
}

Rotation sample_perturbation(double sigma, Random& rng) {
  const double theta = sigma * rng.normal();
  const Eigen::Vector3d axis = rng.unit_vector3();
  return exp_angle_axis({axis, theta});
}

Rotation random_rotation(Random& rng) {
  Eigen::Vector4d q;
  for (int k = 0; k < 4; ++k) q[k] = rng.normal();
  q.normalize();
  const Eigen::Quaterniond quat(q[0], q[1], q[2], q[3]);
  return Rotation::trusted(quat.toRotationMatrix());
}

SyntheticCycle make_cycle_problem(int n, const NoiseSpec& spec) {
  spec.validate();
  if (n < 3) throw std::invalid_argument("a synthetic cycle needs n >= 3");
  Random rng(spec.seed);
  RotationStack latent;
  latent.reserve(n);
  for (int i = 0; i < n; ++i) latent.push_back(rotation_z(2.0 * std::numbers::pi * i / n));
  std::vector<Rotation> measurements;
  measurements.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Rotation clean = latent[i] * latent[(i + 1) % n].transpose();
    measurements.push_back(clean * sample_perturbation(spec.sigma, rng));
  }
  return {CycleProblem(std::move(measurements)), std::move(latent)};
}

SyntheticGraph make_random_problem(int n, double density, const NoiseSpec& spec) {
  spec.validate();
  if (n < 3) throw std::invalid_argument("a random problem needs n >= 3");
  if (!(density > 0.0 && density <= 1.0)) throw std::invalid_argument("density must lie in (0, 1]");
  Random rng(spec.seed);
  for (int attempt = 1; attempt <= kMaxGraphDraws; ++attempt) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng.uniform() < density) pairs.emplace_back(i, j);
      }
    }
    if (static_cast<int>(pairs.size()) < n || !connected(n, pairs)) continue;

    RotationStack latent;
    latent.reserve(n);
    for (int i = 0; i < n; ++i) latent.push_back(random_rotation(rng));
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [i, j] : pairs) {
      const Rotation clean = latent[i] * latent[j].transpose();
      edges.push_back({i, j, clean * sample_perturbation(spec.sigma, rng), 1.0});
    }
    PoseGraph graph(n, std::move(edges));
    const double fiedler = fiedler_value(graph);
    const double noise = spectral_norm_diff(assemble_connection(graph).adjacency, latent_adjacency(graph, latent));
    return {std::move(graph), std::move(latent), fiedler, noise, attempt};
  }
  throw std::runtime_error("no connected graph with a cycle in " + std::to_string(kMaxGraphDraws) +
                           " draws; increase the edge density");
}

}  // namespace rotavg
