// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rotavg/graph.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rotavg {

enum class EigenStrategy {
  /// Lanczos on (M - sigma I)^{-1}; sigma is lowered until M - sigma I
  /// admits a Cholesky factorization, so every eigenvalue lies above it.
  kShiftInvert,
  /// Lanczos on c I - M with c the Gershgorin upper bound. No factorization.
  kFolded,
};

struct EigenOptions {
  EigenStrategy strategy = EigenStrategy::kShiftInvert;
  /// Initial shift for kShiftInvert. Must be below the wanted eigenvalues.
  double shift = -1e-6;
  /// Residual target relative to the Gershgorin norm bound. Values below
  /// 64 machine epsilons are raised to that floor.
  double tol = 1e-15;
  /// Block size of the Lanczos recursion; 0 uses `count`.
  int block_size = 0;
  /// Maximum Krylov basis size before a thick restart; 0 picks
  /// min(dim, max(20 * block, 60)).
  int max_basis = 0;
  /// Cap on block operator applications; 0 uses 50 * count * sqrt(dim).
  long max_block_steps = 0;
  std::uint64_t seed = 0x2545f4914f6cdd1dULL;
};

struct EigenResult {
  /// Ascending.
  Eigen::VectorXd eigenvalues;
  /// Orthonormal columns matching `eigenvalues`.
  Eigen::MatrixXd eigenvectors;
  /// |M v - lambda v| per pair.
  Eigen::VectorXd residual_norms;
  EigenStrategy strategy = EigenStrategy::kShiftInvert;
  /// Shift actually factored (kShiftInvert) or folding constant (kFolded).
  double shift = 0.0;
  double norm_bound = 0.0;
  double tolerance = 0.0;
  long block_steps = 0;
  int restarts = 0;
  /// Set when the residual target was not met but the residuals stopped
  /// improving within 1e4 times the target; the best Ritz pairs are returned.
  bool stagnated = false;
};

class EigenSolverError : public std::runtime_error {
 public:
  EigenSolverError(const std::string& what, Eigen::VectorXd best_residuals)
      : std::runtime_error(what), best_residuals_(std::move(best_residuals)) {}
  const Eigen::VectorXd& best_residuals() const { return best_residuals_; }

 private:
  Eigen::VectorXd best_residuals_;
};

/// The `count` algebraically smallest eigenpairs of the symmetric matrix `m`.
/// Throws EigenSolverError if the residual target is not met within the
/// iteration budget.
EigenResult smallest_eigenpairs(const SparseBlockMatrix& m, int count,
                                const EigenOptions& options = {});

EigenResult smallest_eigenpairs(const SparseBlockMatrix::Sparse& m, int count,
                                const EigenOptions& options = {});

}  // namespace rotavg
