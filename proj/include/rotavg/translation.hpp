// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <vector>

namespace rotavg {

/// Relative translation measurement t~_ij ~ t_i - t_j.
struct TranslationEdge {
  int i = 0;
  int j = 0;
  Eigen::VectorXd value;
};

/// Least-squares positions minimizing sum |t_i - t_j - t~_ij|^2, anchored at
/// t_0 = 0. Throws GraphError on a disconnected or empty graph and
/// std::invalid_argument on inconsistent dimensions or bad vertex ids.
std::vector<Eigen::VectorXd> translation_sync(int num_vertices,
                                              const std::vector<TranslationEdge>& edges);

/// Frobenius norm of the objective gradient over all vertices. Zero at any
/// least-squares solution, where each t_i is the consensus of its neighbors'
/// predictions.
double translation_gradient_norm(const std::vector<Eigen::VectorXd>& positions,
                                 const std::vector<TranslationEdge>& edges);

}  // namespace rotavg
