// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rotavg/eigen.hpp"
#include "rotavg/graph.hpp"

#include <cstdint>
#include <vector>

namespace rotavg {

struct SolveOptions {
  int max_iterations = 100;
  /// Stop once min |lambda_i| < epsilon. Raised internally to the
  /// eigenvalue resolution of Lambda - A~ in double precision when smaller
  /// (see effective_epsilon()).
  double epsilon = 1e-15;
  /// Eigensolver shift; must be negative. Small magnitudes separate the
  /// wanted eigenvalues near zero from the rest of the spectrum.
  double sigma = -1e-6;
  double eig_tol = 1e-15;
  EigenStrategy strategy = EigenStrategy::kShiftInvert;
  std::uint64_t seed = 0x2545f4914f6cdd1dULL;

  /// Throws std::invalid_argument on epsilon <= 0, sigma >= 0 or
  /// max_iterations < 0.
  void validate() const;
  EigenOptions eigen_options(int dim_p) const;
};

/// Smallest meaningful |lambda| for a matrix with Gershgorin norm `norm`:
/// max(epsilon, 16 * machine epsilon * norm).
double effective_epsilon(double epsilon, double norm);

/// -<R R^T, M>.
double cost(const RotationStack& r, const SparseBlockMatrix& m);

struct PrimalUpdate {
  RotationStack rotations;
  /// The p smallest eigenvalues of Lambda - A~, ascending.
  Eigen::VectorXd eigenvalues;
  double lambda_min = 0.0;
  /// X_1 was numerically singular and the projected-gauge fallback ran.
  bool gauge_fallback = false;
  int degenerate_projections = 0;
  EigenResult eigen;
};

struct Rounding {
  RotationStack rotations;
  bool gauge_fallback = false;
  int degenerate_projections = 0;
};

/// Gauge fix X <- X X_1^{-1} followed by blockwise projection to SO(p). When
/// X_1 is singular (sigma_min <= 1e-12 sigma_max), X is rotated by the
/// transpose of the projection of X_1 instead, and the rounded stack is
/// re-anchored so that R_1 = I.
Rounding round_to_rotations(const Eigen::MatrixXd& x, int p);

/// Bottom eigenvectors of Lambda - A~, gauge fixed to R_1 = I, projected
/// blockwise to SO(p).
PrimalUpdate primal_update(const BlockDiagonal& lambda, const SparseBlockMatrix& adjacency,
                           const SolveOptions& options = {});

/// Primal update with Lambda = D.
RotationStack spectral_initialization(const SparseBlockMatrix& adjacency, const BlockDiagonal& degree,
                                      const SolveOptions& options = {});

/// Lambda_i = U_i Sigma_i U_i^T from the SVD of (A~ R)_i.
BlockDiagonal dual_update(const RotationStack& r, const SparseBlockMatrix& adjacency);

/// Lambda_i = sym(sum_j A~_ij R_j R_i^T).
BlockDiagonal gao_dual_update(const RotationStack& r, const SparseBlockMatrix& adjacency);

struct TraceRecord {
  int iteration = 0;
  double cost = 0.0;
  double lambda_min = 0.0;
  std::int64_t wall_time_ns = 0;
};

struct PrimalDualState {
  RotationStack rotations;
  /// On convergence, dual_update(rotations); otherwise the last Lambda
  /// handed to the eigensolver.
  BlockDiagonal lambda;
  /// The p smallest eigenvalues of lambda - A~.
  Eigen::VectorXd eigenvalues;
  double lambda_min = 0.0;
  double cost = 0.0;
  /// 0-based index of the final outer iteration; 0 means the spectral
  /// initialization already met the stopping rule.
  int iteration = 0;
};

struct SolveResult {
  PrimalDualState state;
  std::vector<TraceRecord> trace;
  /// dual_update(R_t) for every iteration t, paired with trace[t].
  std::vector<BlockDiagonal> duals;
  bool converged = false;
  bool certified = false;
  double epsilon_used = 0.0;
  int gauge_fallbacks = 0;
};

/// Primal-dual iterations from Lambda_0 = D until |lambda_1| < epsilon,
/// with lambda_i the spectrum of the Lambda used in that iteration. On
/// stopping, the returned pair (R, dual_update(R)) gets its own eigensolve and
/// certified = lambda_1 >= -epsilon_used.
SolveResult primal_dual_solve(const PoseGraph& g, const SolveOptions& options = {});
SolveResult primal_dual_solve(const Connection& c, const SolveOptions& options = {});

struct GpmIterate {
  RotationStack rotations;
  /// Dual iterate computed from `rotations`.
  BlockDiagonal lambda;
  double cost = 0.0;
  /// Blocks whose projection needed the determinant flip.
  int flips = 0;
};

/// R_{k+1} = P(A~ R_k). Entry k holds R_k and Lambda_k built from A~ R_k;
/// max_iterations + 1 entries are returned.
std::vector<GpmIterate> gpm_solve(const SparseBlockMatrix& adjacency, const RotationStack& start,
                                  int max_iterations);

/// |A~ R - Lambda R|_F.
double kkt_residual(const RotationStack& r, const BlockDiagonal& lambda, const SparseBlockMatrix& adjacency);

}  // namespace rotavg
