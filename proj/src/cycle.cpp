// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotavg/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rotavg {

namespace {

constexpr double kPi = std::numbers::pi;

// Transported cycle-error axis convention shared by residual checks.
Eigen::Vector3d error_axis(const CycleProblem& c) { return nth_roots(cycle_error(c), c.n()).axis; }

}  // namespace

CycleProblem::CycleProblem(std::vector<Rotation> measurements) : measurements_(std::move(measurements)) {
  if (measurements_.size() < 3) throw std::invalid_argument("a cycle needs at least 3 measurements");
  for (const Rotation& r : measurements_) {
    if (r.dim() != 3) throw std::invalid_argument("cycle measurements must be in SO(3)");
  }
}

CycleProblem CycleProblem::reversed() const {
  // Vertex order 0, n-1, ..., 1; edge (v_k, v_{k+1}) carries the transpose
  // of the forward measurement on the same pair.
  const int count = n();
  std::vector<Rotation> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back(measurements_[(count - 1 - k) % count].transpose());
  return CycleProblem(std::move(out));
}

PoseGraph CycleProblem::to_pose_graph() const {
  std::vector<Edge> edges;
  edges.reserve(measurements_.size());
  for (int k = 0; k < n(); ++k) edges.push_back({k, (k + 1) % n(), measurements_[k], 1.0});
  return PoseGraph(n(), std::move(edges));
}

CycleFromGraph cycle_from_graph(const PoseGraph& g) {
  const int n = g.num_vertices();
  if (g.dim() != 3 || n < 3 || g.num_edges() != n) {
    throw std::invalid_argument("graph is not an SO(3) cycle");
  }
  std::vector<std::vector<int>> incident(n);
  for (int k = 0; k < g.num_edges(); ++k) {
    const Edge& e = g.edges()[k];
    if (e.weight != 1.0) throw std::invalid_argument("cycle closed forms require unit weights");
    incident[e.i].push_back(k);
    incident[e.j].push_back(k);
  }
  for (const auto& inc : incident) {
    if (inc.size() != 2) throw std::invalid_argument("graph is not a cycle: a vertex has degree != 2");
  }
  std::vector<Rotation> measurements;
  std::vector<int> order{0};
  int vertex = 0;
  int edge = incident[0][0];
  for (int step = 0; step < n; ++step) {
    const Edge& e = g.edges()[edge];
    const bool forward = e.i == vertex;
    measurements.push_back(forward ? e.rotation : e.rotation.transpose());
    vertex = forward ? e.j : e.i;
    if (step + 1 < n) {
      if (vertex == 0) throw std::invalid_argument("graph is not a single cycle");
      order.push_back(vertex);
      edge = incident[vertex][0] == edge ? incident[vertex][1] : incident[vertex][0];
    }
  }
  if (vertex != 0) throw std::invalid_argument("graph is not a single cycle");
  return {CycleProblem(std::move(measurements)), std::move(order)};
}

Rotation cycle_error(const CycleProblem& c) {
  Rotation e = Rotation::identity(3);
  for (const Rotation& r : c.measurements()) e = e * r;
  return e;
}

ChangeOfBasis change_of_basis(const CycleProblem& c) {
  const int n = c.n();
  ChangeOfBasis out{{}, SparseBlockMatrix(n, 3, {})};
  out.u.reserve(n);
  out.u.push_back(Rotation::identity(3));
  for (int i = 1; i < n; ++i) out.u.push_back(c.measurements()[i - 1].transpose() * out.u.back());
  std::vector<SparseBlockMatrix::Entry> entries;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const Block b = out.u[i].matrix().transpose() * c.measurements()[i].matrix() * out.u[j].matrix();
    entries.push_back({i, j, b});
  }
  out.adjacency = SparseBlockMatrix(n, 3, std::move(entries));
  return out;
}

StationaryPoint closed_form_stationary(const CycleProblem& c, int k) {
  const int n = c.n();
  if (k < 0 || k >= n) throw std::out_of_range("root index " + std::to_string(k) + " outside [0, n)");
  const NthRoots roots = nth_roots(cycle_error(c), n);
  StationaryPoint out;
  out.k = k;
  out.residual_angle = (roots.gamma - 2.0 * kPi * k) / n;
  out.tie = std::abs(std::abs(roots.gamma) - kPi) < 1e-12;
  const AxisAngle ek{roots.axis, out.residual_angle};
  out.rotations.reserve(n);
  Rotation prefix = Rotation::identity(3);  // R~_{12} ... R~_{i-1,i}
  for (int i = 0; i < n; ++i) {
    out.rotations.push_back(prefix.transpose() * rotation_power(ek, i));
    prefix = prefix * c.measurements()[i];
  }
  out.rotations[0] = Rotation::identity(3);
  out.cost = -2.0 * n * (1.0 + 2.0 * std::cos(out.residual_angle));
  return out;
}

std::vector<StationaryPoint> all_stationary_points(const CycleProblem& c) {
  std::vector<StationaryPoint> out;
  out.reserve(c.n());
  for (int k = 0; k < c.n(); ++k) out.push_back(closed_form_stationary(c, k));
  return out;
}

Equidistribution residual_equidistribution_check(const RotationStack& r, const CycleProblem& c) {
  const int n = c.n();
  if (static_cast<int>(r.size()) != n) throw std::invalid_argument("rotation stack size differs from n");
  const Eigen::Vector3d axis = error_axis(c);
  std::vector<double> angles(n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const Rotation residual = c.measurements()[i] * r[j] * r[i].transpose();
    angles[i] = signed_angle_about(residual, r[i].matrix() * axis);
  }
  // Average offsets from the first angle so that values near +-pi do not
  // straddle the branch cut.
  double offset_sum = 0.0;
  for (double a : angles) offset_sum += wrap_angle(a - angles[0]);
  Equidistribution out;
  out.w = wrap_angle(angles[0] + offset_sum / n);
  for (double a : angles) out.max_deviation = std::max(out.max_deviation, std::abs(wrap_angle(a - out.w)));
  return out;
}

Equidistribution residual_equidistribution_check(const StationaryPoint& s, const CycleProblem& c) {
  return residual_equidistribution_check(s.rotations, c);
}

std::vector<double> adjacency_spectrum(const CycleProblem& c) {
  const int n = c.n();
  const double gamma = nth_roots(cycle_error(c), n).gamma;
  std::vector<double> out;
  out.reserve(3 * n);
  for (int k = 0; k < n; ++k) {
    const double twisted = 2.0 * std::cos((gamma - 2.0 * kPi * k) / n);
    out.push_back(twisted);
    out.push_back(twisted);
    out.push_back(2.0 * std::cos(2.0 * kPi * k / n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rotavg
