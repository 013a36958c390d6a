// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotavg/certify.hpp"

#include <cmath>
#include <stdexcept>

namespace rotavg {

namespace {

double lambda_p1(const SparseBlockMatrix& laplacian) {
  const int p = laplacian.block_dim();
  EigenOptions opts;
  opts.block_size = p + 1;
  const EigenResult er = smallest_eigenpairs(laplacian, p + 1, opts);
  return er.eigenvalues[p];
}

SparseBlockMatrix as_block_matrix(const BlockDiagonal& d) {
  return SparseBlockMatrix(d.num_blocks(), d.block_dim(), {}, d.blocks());
}

}  // namespace

BlockDiagonal dual_from_primal(const RotationStack& r, const SparseBlockMatrix& adjacency) {
  return gao_dual_update(r, adjacency);
}

double duality_gap_lower_bound(const Eigen::VectorXd& lambda_small, int n, int p) {
  return static_cast<double>(n) * p * lambda_small.sum();
}

Certificate certify_pair(const RotationStack& r, const BlockDiagonal& lambda,
                         const SparseBlockMatrix& adjacency, double epsilon, const EigenOptions& eigen) {
  const int n = adjacency.num_blocks();
  const int p = adjacency.block_dim();
  if (static_cast<int>(r.size()) != n || lambda.num_blocks() != n) {
    throw std::invalid_argument("certificate inputs disagree on the vertex count");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("certificate tolerance must be positive");
  EigenOptions opts = eigen;
  if (opts.block_size == 0) opts.block_size = p;
  const EigenResult er = smallest_eigenpairs(diagonal_minus(lambda, adjacency), p, opts);

  Certificate out;
  out.lambda_small = er.eigenvalues;
  out.gap_lower_bound = duality_gap_lower_bound(er.eigenvalues, n, p);
  out.cost = cost(r, adjacency);
  out.duality_gap = lambda.trace() + out.cost;
  out.kkt_residual = kkt_residual(r, lambda, adjacency);
  out.epsilon = epsilon;
  out.is_certified = er.eigenvalues[0] >= -epsilon;
  return out;
}

Certificate certificate_of(const SolveResult& result, const SparseBlockMatrix& adjacency) {
  const PrimalDualState& s = result.state;
  Certificate out;
  out.lambda_small = s.eigenvalues;
  out.gap_lower_bound = duality_gap_lower_bound(s.eigenvalues, adjacency.num_blocks(), adjacency.block_dim());
  out.cost = s.cost;
  out.duality_gap = s.lambda.trace() + s.cost;
  out.kkt_residual = kkt_residual(s.rotations, s.lambda, adjacency);
  out.epsilon = result.epsilon_used;
  out.is_certified = result.certified;
  return out;
}

Certificate certify_solution(const RotationStack& r, const SparseBlockMatrix& adjacency, double epsilon,
                             const EigenOptions& eigen) {
  return certify_pair(r, dual_from_primal(r, adjacency), adjacency, epsilon, eigen);
}

double doherty_bound(const SparseBlockMatrix& adjacency, const SparseBlockMatrix& latent_adjacency,
                     const SparseBlockMatrix& latent_laplacian, const BlockDiagonal& lambda,
                     const BlockDiagonal& degree) {
  const double gap = lambda_p1(latent_laplacian);
  if (gap <= 1e-12) throw std::domain_error("lambda_{p+1} of the latent Laplacian is numerically zero");
  const SparseBlockMatrix shift = difference(as_block_matrix(lambda), as_block_matrix(degree));
  const SparseBlockMatrix noise = difference(adjacency, latent_adjacency);
  const double norm = spectral_norm_diff(shift, noise);
  const int n = adjacency.num_blocks();
  const int p = adjacency.block_dim();
  return (8.0 + 4.0 * std::sqrt(2.0)) * std::sqrt(double(n) * p) * norm / gap;
}

double doherty_bound(const SparseBlockMatrix& adjacency, const SparseBlockMatrix& latent_adjacency,
                     const SparseBlockMatrix& latent_laplacian) {
  const double gap = lambda_p1(latent_laplacian);
  if (gap <= 1e-12) throw std::domain_error("lambda_{p+1} of the latent Laplacian is numerically zero");
  const int n = adjacency.num_blocks();
  const int p = adjacency.block_dim();
  return (8.0 + 4.0 * std::sqrt(2.0)) * std::sqrt(double(n) * p) *
         spectral_norm_diff(adjacency, latent_adjacency) / gap;
}

double gauge_invariant_distance(const RotationStack& a, const RotationStack& b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("stacks must be nonempty and equal in size");
  const Eigen::MatrixXd x = stack_matrix(a);
  const Eigen::MatrixXd y = stack_matrix(b);
  const Block cross = y.transpose() * x;
  const Rotation g = project_to_rotation(cross).rotation;
  return (x - y * g.matrix()).norm();
}

}  // namespace rotavg
