// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotavg/translation.hpp"

#include "rotavg/graph.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <cmath>
#include <stdexcept>
#include <string>

namespace rotavg {

std::vector<Eigen::VectorXd> translation_sync(int num_vertices,
                                              const std::vector<TranslationEdge>& edges) {
  if (num_vertices < 1 || edges.empty()) {
    throw GraphError(GraphError::Kind::kEmpty, "translation problem needs vertices and edges");
  }
  const Eigen::Index d = edges.front().value.size();
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const TranslationEdge& e = edges[k];
    if (e.i < 0 || e.j < 0 || e.i >= num_vertices || e.j >= num_vertices || e.i == e.j) {
      throw std::invalid_argument("translation edge " + std::to_string(k) + " has invalid endpoints");
    }
    if (e.value.size() != d || d == 0) {
      throw std::invalid_argument("translation edge " + std::to_string(k) + " has the wrong dimension");
    }
    pairs.emplace_back(e.i, e.j);
  }
  require_connected(num_vertices, pairs);

  // Normal equations L t = J^T t~ with vertex 0 eliminated.
  const int reduced = num_vertices - 1;
  std::vector<Eigen::VectorXd> positions(num_vertices, Eigen::VectorXd::Zero(d));
  if (reduced == 0) return positions;
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(reduced, d);
  for (const TranslationEdge& e : edges) {
    const int a = e.i - 1;
    const int b = e.j - 1;
    if (a >= 0) {
      triplets.emplace_back(a, a, 1.0);
      rhs.row(a) += e.value.transpose();
    }
    if (b >= 0) {
      triplets.emplace_back(b, b, 1.0);
      rhs.row(b) -= e.value.transpose();
    }
    if (a >= 0 && b >= 0) {
      triplets.emplace_back(a, b, -1.0);
      triplets.emplace_back(b, a, -1.0);
    }
  }
  Eigen::SparseMatrix<double> laplacian(reduced, reduced);
  laplacian.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(laplacian);
  if (ldlt.info() != Eigen::Success) throw std::runtime_error("reduced Laplacian factorization failed");
  const Eigen::MatrixXd t = ldlt.solve(rhs);
  for (int v = 1; v < num_vertices; ++v) positions[v] = t.row(v - 1).transpose();
  return positions;
}

double translation_gradient_norm(const std::vector<Eigen::VectorXd>& positions,
                                 const std::vector<TranslationEdge>& edges) {
  std::vector<Eigen::VectorXd> grad(positions.size(), Eigen::VectorXd::Zero(positions.front().size()));
  for (const TranslationEdge& e : edges) {
    const Eigen::VectorXd r = positions[e.i] - positions[e.j] - e.value;
    grad[e.i] += 2.0 * r;
    grad[e.j] -= 2.0 * r;
  }
  double sq = 0.0;
  for (const auto& g : grad) sq += g.squaredNorm();
  return std::sqrt(sq);
}

}  // namespace rotavg
