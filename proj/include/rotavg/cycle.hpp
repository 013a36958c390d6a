// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rotavg/geom.hpp"
#include "rotavg/graph.hpp"

#include <vector>

namespace rotavg {

/// Unit-weight SO(3) cycle 0 -> 1 -> ... -> n-1 -> 0. Measurement k is
/// R~_{k,k+1} on the edge from vertex k to vertex (k+1) mod n.
class CycleProblem {
 public:
  /// Throws std::invalid_argument for fewer than 3 measurements or any
  /// measurement outside SO(3).
  explicit CycleProblem(std::vector<Rotation> measurements);

  int n() const { return static_cast<int>(measurements_.size()); }
  const std::vector<Rotation>& measurements() const { return measurements_; }
  /// Same problem traversed backwards from vertex 0: 0 -> n-1 -> ... -> 1.
  CycleProblem reversed() const;
  PoseGraph to_pose_graph() const;

 private:
  std::vector<Rotation> measurements_;
};

struct CycleFromGraph {
  CycleProblem problem;
  /// order[k] is the graph vertex visited k-th, starting at vertex 0.
  std::vector<int> order;
};

/// Recognizes a unit-weight SO(3) pose graph that is a single cycle. The walk
/// starts at vertex 0 along its first incident edge; edges traversed
/// against their stored direction contribute their transpose. Throws
/// std::invalid_argument when the graph is not a cycle.
CycleFromGraph cycle_from_graph(const PoseGraph& g);

/// E = R~_{12} R~_{23} ... R~_{n1}.
Rotation cycle_error(const CycleProblem& c);

struct ChangeOfBasis {
  /// U_0 = I, U_i = R~_{i-1,i}^T U_{i-1}.
  std::vector<Rotation> u;
  /// U^T A~ U: identity blocks between consecutive vertices, E at
  /// (n-1, 0) and E^T at (0, n-1).
  SparseBlockMatrix adjacency;
};

ChangeOfBasis change_of_basis(const CycleProblem& c);

struct StationaryPoint {
  int k = 0;
  /// Gauge fixed, rotations[0] = I.
  RotationStack rotations;
  /// -2 n Tr(E_k).
  double cost = 0.0;
  /// Angle of E_k before wrapping, gamma/n - 2 k pi / n.
  double residual_angle = 0.0;
  /// |gamma| = pi, where the roots k = 0 and k = 1 have residuals of equal
  /// magnitude and both are global optima.
  bool tie = false;
};

/// R_i = (R~_{12} ... R~_{i-1,i})^T E_k^{i-1}. Throws std::out_of_range for
/// k outside [0, n).
StationaryPoint closed_form_stationary(const CycleProblem& c, int k);

/// All n closed-form stationary points, k = 0 first.
std::vector<StationaryPoint> all_stationary_points(const CycleProblem& c);

struct Equidistribution {
  /// Mean signed residual angle about the transported cycle-error axis.
  double w = 0.0;
  double max_deviation = 0.0;
};

/// Signed residual angle of R~_{i,i+1} R_{i+1} R_i^T on every edge, measured
/// about R_i n with n the axis of E, and the spread around their mean.
Equidistribution residual_equidistribution_check(const StationaryPoint& s, const CycleProblem& c);
Equidistribution residual_equidistribution_check(const RotationStack& r, const CycleProblem& c);

/// Closed-form spectrum of the connection adjacency, ascending: each
/// 2 cos(gamma/n - 2 k pi / n) twice and each 2 cos(2 k pi / n) once.
std::vector<double> adjacency_spectrum(const CycleProblem& c);

}  // namespace rotavg
