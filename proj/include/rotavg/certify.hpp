// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rotavg/eigen.hpp"
#include "rotavg/graph.hpp"
#include "rotavg/solver.hpp"

namespace rotavg {

/// Lambda_i = sym(sum_j A~_ij R_j R_i^T).
BlockDiagonal dual_from_primal(const RotationStack& r, const SparseBlockMatrix& adjacency);

struct Certificate {
  /// p smallest eigenvalues of Lambda - A~, ascending.
  Eigen::VectorXd lambda_small;
  /// n p (lambda_1 + ... + lambda_p).
  double gap_lower_bound = 0.0;
  /// Tr(Lambda) - <R, A~ R>.
  double duality_gap = 0.0;
  /// Primal cost -<R R^T, A~>; the dual objective is cost - duality_gap.
  double cost = 0.0;
  double kkt_residual = 0.0;
  double epsilon = 0.0;
  bool is_certified = false;
};

/// Certifies the pair (R, Lambda). Throws std::invalid_argument on size
/// mismatches; eigensolver failures propagate.
Certificate certify_pair(const RotationStack& r, const BlockDiagonal& lambda,
                         const SparseBlockMatrix& adjacency, double epsilon,
                         const EigenOptions& eigen = {});

/// Certifies R with Lambda = dual_from_primal(R, A~).
Certificate certify_solution(const RotationStack& r, const SparseBlockMatrix& adjacency,
                             double epsilon = 1e-10, const EigenOptions& eigen = {});

/// Certificate for the solver's final pair (R, Lambda), reusing the
/// eigenvalues it already computed and its effective tolerance.
Certificate certificate_of(const SolveResult& result, const SparseBlockMatrix& adjacency);

/// n p (lambda_1 + ... + lambda_p).
double duality_gap_lower_bound(const Eigen::VectorXd& lambda_small, int n, int p);

/// (8 + 4 sqrt 2) sqrt(n p) |(Lambda - D) - (A~ - A)|_2 / lambda_{p+1}(L),
/// with A, L the latent adjacency and connection Laplacian. Throws
/// std::domain_error when lambda_{p+1}(L) <= 1e-12.
double doherty_bound(const SparseBlockMatrix& adjacency, const SparseBlockMatrix& latent_adjacency,
                     const SparseBlockMatrix& latent_laplacian, const BlockDiagonal& lambda,
                     const BlockDiagonal& degree);

/// Form with Lambda = D: (8 + 4 sqrt 2) sqrt(n p) |A~ - A|_2 / lambda_{p+1}(L).
double doherty_bound(const SparseBlockMatrix& adjacency, const SparseBlockMatrix& latent_adjacency,
                     const SparseBlockMatrix& latent_laplacian);

/// min over G in SO(p) of |a - b G|_F.
double gauge_invariant_distance(const RotationStack& a, const RotationStack& b);

}  // namespace rotavg
