// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rotavg/graph.hpp"
#include "rotavg/solver.hpp"

#include <Eigen/Core>

#include <complex>
#include <vector>

namespace rotavg {

/// Measurement h_ij ~ z_i conj(z_j) with |h_ij| = 1. Vertex ids are 0-based.
struct PhaseEdge {
  int i = 0;
  int j = 0;
  std::complex<double> value{1.0, 0.0};
};

/// Phase synchronization over the unit circle. The Hermitian measurement
/// matrix stores h_ij on each edge and conj(h_ij) at (j, i).
class PhaseProblem {
 public:
  /// Throws GraphError on bad topology and std::invalid_argument when a
  /// measurement is not of unit modulus within 1e-12.
  PhaseProblem(int num_vertices, std::vector<PhaseEdge> edges);

  /// Reads the strict upper triangle of a dense Hermitian matrix; zero
  /// entries are absent edges. Throws std::invalid_argument when the matrix
  /// is not Hermitian, has a nonzero diagonal, or a nonzero entry is not of
  /// unit modulus.
  static PhaseProblem from_dense(const Eigen::MatrixXcd& h, double tol = 1e-12);

  int num_vertices() const { return n_; }
  const std::vector<PhaseEdge>& edges() const { return edges_; }
  Eigen::MatrixXcd to_dense() const;

  /// Real 2n x 2n form: each h = a + ib becomes the block [[a, -b], [b, a]].
  const SparseBlockMatrix& realified() const { return real_; }
  /// Number of incident edges per vertex.
  const Eigen::VectorXd& degrees() const { return degrees_; }

 private:
  int n_;
  std::vector<PhaseEdge> edges_;
  Eigen::VectorXd degrees_;
  SparseBlockMatrix real_;
};

struct PhaseResult {
  Eigen::VectorXcd z;
  /// Diagonal dual variable. At convergence this is |h z| and `lambda_min`
  /// is the smallest eigenvalue of Diag(lambda) - h for it.
  Eigen::VectorXd lambda;
  double lambda_min = 0.0;
  /// -z^* h z.
  double cost = 0.0;
  int iteration = 0;
  bool converged = false;
  bool certified = false;
  double epsilon_used = 0.0;
  /// Eigenvector entries that were numerically zero and had to be replaced.
  int perturbed_entries = 0;
  std::vector<TraceRecord> trace;
};

/// -z^* h z.
double phase_cost(const PhaseProblem& problem, const Eigen::VectorXcd& z);

/// Primal-dual iterations on the circle group: one bottom eigenvector of
/// Diag(Lambda) - h per step, entrywise normalization, and
/// Lambda_i = |sum_j h_ij z_j|. The result is gauge fixed to z_0 = 1.
PhaseResult phase_sync_solve(const PhaseProblem& problem, const SolveOptions& options = {});

}  // namespace rotavg
