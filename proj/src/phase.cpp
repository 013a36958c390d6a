// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotavg/phase.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rotavg {

namespace {

// The circle group embeds in SO(2) as e^{i phi} -> rotation_2d(phi), which
// turns the realified measurement matrix into a connection adjacency.
PoseGraph as_planar_graph(int n, const std::vector<PhaseEdge>& edges) {
  std::vector<Edge> planar;
  planar.reserve(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const PhaseEdge& e = edges[k];
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag()) ||
        std::abs(std::abs(e.value) - 1.0) > 1e-12) {
      throw std::invalid_argument("phase measurement on edge " + std::to_string(k) +
                                  " is not of unit modulus");
    }
    planar.push_back({e.i, e.j, rotation_2d(std::arg(e.value)), 1.0});
  }
  return PoseGraph(n, std::move(planar));
}

BlockDiagonal scalar_dual(const Eigen::VectorXd& lambda) {
  std::vector<Block> blocks(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) blocks[i] = lambda[i] * Block::Identity(2, 2);
  return BlockDiagonal(std::move(blocks));
}

Eigen::VectorXcd times_h(const PhaseProblem& problem, const Eigen::VectorXcd& z) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(z.size());
  for (const PhaseEdge& e : problem.edges()) {
    out[e.i] += e.value * z[e.j];
    out[e.j] += std::conj(e.value) * z[e.i];
  }
  return out;
}

}  // namespace

PhaseProblem::PhaseProblem(int num_vertices, std::vector<PhaseEdge> edges)
    : n_(num_vertices),
      edges_(std::move(edges)),
      degrees_(Eigen::VectorXd::Zero(std::max(num_vertices, 0))),
      real_(assemble_connection(as_planar_graph(num_vertices, edges_)).adjacency) {
  for (const PhaseEdge& e : edges_) {
    degrees_[e.i] += 1.0;
    degrees_[e.j] += 1.0;
  }
}

PhaseProblem PhaseProblem::from_dense(const Eigen::MatrixXcd& h, double tol) {
  if (h.rows() != h.cols()) throw std::invalid_argument("phase matrix must be square");
  const int n = static_cast<int>(h.rows());
  std::vector<PhaseEdge> edges;
  for (int i = 0; i < n; ++i) {
    if (std::abs(h(i, i)) > tol) throw std::invalid_argument("phase matrix must have a zero diagonal");
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(h(i, j) - std::conj(h(j, i))) > tol) {
        throw std::invalid_argument("phase matrix is not Hermitian");
      }
      if (std::abs(h(i, j)) <= tol) continue;
      if (std::abs(std::abs(h(i, j)) - 1.0) > tol) {
        throw std::invalid_argument("phase matrix entry is not of unit modulus");
      }
      edges.push_back({i, j, h(i, j) / std::abs(h(i, j))});
    }
  }
  return PhaseProblem(n, std::move(edges));
}

Eigen::MatrixXcd PhaseProblem::to_dense() const {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n_, n_);
  for (const PhaseEdge& e : edges_) {
    h(e.i, e.j) = e.value;
    h(e.j, e.i) = std::conj(e.value);
  }
  return h;
}

double phase_cost(const PhaseProblem& problem, const Eigen::VectorXcd& z) {
  return -z.dot(times_h(problem, z)).real();
}

PhaseResult phase_sync_solve(const PhaseProblem& problem, const SolveOptions& options) {
  options.validate();
  const int n = problem.num_vertices();
  EigenOptions eig = options.eigen_options(2);

  PhaseResult out;
  Eigen::VectorXd lambda = problem.degrees();
  for (int t = 0; t <= options.max_iterations; ++t) {
    const auto start = std::chrono::steady_clock::now();
    const SparseBlockMatrix m = diagonal_minus(scalar_dual(lambda), problem.realified());
    const EigenResult er = smallest_eigenpairs(m, 1, eig);

    Eigen::VectorXcd z(n);
    for (int i = 0; i < n; ++i) z[i] = {er.eigenvectors(2 * i, 0), er.eigenvectors(2 * i + 1, 0)};
    // Entries with no usable phase take the phase of their neighborhood sum.
    const double floor = 1e-12 * z.cwiseAbs().maxCoeff();
    std::vector<int> tiny;
    for (int i = 0; i < n; ++i) {
      if (std::abs(z[i]) < floor) tiny.push_back(i);
    }
    if (!tiny.empty()) {
      for (int i : tiny) z[i] = 0.0;
      const Eigen::VectorXcd hz = times_h(problem, z);
      for (int i : tiny) z[i] = std::abs(hz[i]) > floor ? hz[i] : std::complex<double>(1.0, 0.0);
      out.perturbed_entries += static_cast<int>(tiny.size());
    }
    const std::complex<double> gauge = std::conj(z[0]) / std::abs(z[0]);
    for (int i = 0; i < n; ++i) z[i] = z[i] * gauge / std::abs(z[i]);
    z[0] = 1.0;

    const Eigen::VectorXcd hz = times_h(problem, z);
    const double f = -z.dot(hz).real();
    out.trace.push_back(
        {t, f, er.eigenvalues[0],
         std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start)
             .count()});

    const double eps = effective_epsilon(options.epsilon, er.norm_bound);
    out.epsilon_used = eps;
    out.z = z;
    out.lambda = lambda;
    out.lambda_min = er.eigenvalues[0];
    out.cost = f;
    out.iteration = t;
    const Eigen::VectorXd next = hz.cwiseAbs();
    if (std::abs(er.eigenvalues[0]) < eps) {
      // Certify the returned pair (z, |h z|), as in the SO(p) solver.
      const EigenResult fin =
          smallest_eigenpairs(diagonal_minus(scalar_dual(next), problem.realified()), 1, eig);
      out.epsilon_used = effective_epsilon(options.epsilon, fin.norm_bound);
      out.lambda = next;
      out.lambda_min = fin.eigenvalues[0];
      out.converged = true;
      out.certified = out.lambda_min >= -out.epsilon_used;
      return out;
    }
    lambda = next;
  }
  return out;
}

}  // namespace rotavg
