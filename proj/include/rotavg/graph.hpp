// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rotavg/geom.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rotavg {

class GraphError : public std::runtime_error {
 public:
  enum class Kind {
    kInvalidVertex,
    kSelfLoop,
    kDuplicateEdge,
    kDimensionMismatch,
    kNegativeWeight,
    kEmpty,
    kDisconnected,
    kAcyclic,
  };

  GraphError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Measurement R_ij ~ R_i R_j^T on the edge (i, j). Vertex ids are 0-based.
struct Edge {
  int i = 0;
  int j = 0;
  Rotation rotation;
  double weight = 1.0;
};

/// Connected, cyclic, simple graph of relative rotation measurements.
/// Invariants are checked at construction and a GraphError is thrown on
/// violation.
class PoseGraph {
 public:
  PoseGraph(int num_vertices, std::vector<Edge> edges);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  /// Rotation dimension p.
  int dim() const { return dim_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Sum of incident edge weights.
  double degree(int vertex) const { return degrees_[vertex]; }

 private:
  int num_vertices_;
  int dim_;
  std::vector<Edge> edges_;
  std::vector<double> degrees_;
};

/// Accumulates edges while dropping repeated unordered pairs (first kept).
class PoseGraphBuilder {
 public:
  /// Returns false if the unordered pair was already present.
  bool add_edge(Edge edge);
  int num_dropped() const { return dropped_; }
  const std::vector<Edge>& edges() const { return edges_; }
  PoseGraph build(int num_vertices) const;

 private:
  std::map<std::pair<int, int>, int> seen_;
  std::vector<Edge> edges_;
  int dropped_ = 0;
};

/// Throws GraphError::kDisconnected when the undirected graph on
/// `num_vertices` vertices with these edges is not connected.
void require_connected(int num_vertices,
                       const std::vector<std::pair<int, int>>& edges);

/// Symmetric block diagonal matrix, one p x p block per vertex.
class BlockDiagonal {
 public:
  BlockDiagonal() = default;
  explicit BlockDiagonal(std::vector<Block> blocks);

  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int block_dim() const {
    return blocks_.empty() ? 0 : static_cast<int>(blocks_.front().rows());
  }
  const Block& block(int i) const { return blocks_[i]; }
  const std::vector<Block>& blocks() const { return blocks_; }
  double trace() const;
  /// Blockwise product with an (n p) x k matrix.
  Eigen::MatrixXd multiply(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd to_dense() const;

 private:
  std::vector<Block> blocks_;
};

/// Symmetric (n p) x (n p) matrix assembled from p x p blocks. Off-diagonal
/// blocks are stored once for (row, col) and mirrored as the transpose at
/// (col, row). Diagonal blocks are optional and must be symmetric.
class SparseBlockMatrix {
 public:
  struct Entry {
    int row = 0;
    int col = 0;
    Block value;
  };

  using Sparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  SparseBlockMatrix(int num_blocks, int block_dim, std::vector<Entry> off_diagonal,
                    std::vector<Block> diagonal = {});

  int num_blocks() const { return n_; }
  int block_dim() const { return p_; }
  int dim() const { return n_ * p_; }

  /// Block (i, j), zero if not stored.
  Block block(int i, int j) const;
  const std::vector<Entry>& off_diagonal() const { return off_; }
  const std::vector<Block>& diagonal() const { return diag_; }

  const Sparse& sparse() const { return sparse_; }
  Eigen::MatrixXd multiply(const Eigen::MatrixXd& x) const { return sparse_ * x; }
  Eigen::MatrixXd to_dense() const { return Eigen::MatrixXd(sparse_); }

  /// Gershgorin interval [lower, upper] containing the spectrum.
  double gershgorin_lower() const { return gersh_lower_; }
  double gershgorin_upper() const { return gersh_upper_; }
  /// max(|lower|, |upper|), an upper bound on the operator norm.
  double gershgorin_norm() const;

  /// Same pattern with every block scaled by `factor`.
  SparseBlockMatrix scaled(double factor) const;
  /// Adds `shift` times the identity.
  SparseBlockMatrix shifted(double shift) const;

 private:
  int n_;
  int p_;
  std::vector<Entry> off_;
  std::vector<Block> diag_;
  std::map<std::pair<int, int>, int> index_;
  Sparse sparse_;
  double gersh_lower_ = 0.0;
  double gersh_upper_ = 0.0;
};

/// Lambda - M, with Lambda block diagonal.
SparseBlockMatrix diagonal_minus(const BlockDiagonal& lambda,
                                 const SparseBlockMatrix& m);
/// a - b over the union of their patterns.
SparseBlockMatrix difference(const SparseBlockMatrix& a,
                             const SparseBlockMatrix& b);

/// Dense (n p) x p stack of rotations and back.
using RotationStack = std::vector<Rotation>;
Eigen::MatrixXd stack_matrix(const RotationStack& rotations);
/// p x p block `i` of an (n p) x k matrix.
Block stack_block(const Eigen::MatrixXd& x, int i, int p);

struct Connection {
  SparseBlockMatrix adjacency;  // A~ with blocks kappa_ij R~_ij
  BlockDiagonal degree;         // D = Diag(d_i I_p)
  SparseBlockMatrix laplacian;  // D - A~
};

Connection assemble_connection(const PoseGraph& g);

/// Connection adjacency of the noiseless problem with blocks
/// kappa_ij R_i R_j^T on the same edge set.
SparseBlockMatrix latent_adjacency(const PoseGraph& g, const RotationStack& latent);

/// Weighted scalar graph Laplacian as a 1x1-block matrix.
SparseBlockMatrix scalar_laplacian(const PoseGraph& g);

/// Second smallest eigenvalue of the scalar Laplacian, which equals
/// lambda_{p+1} of the latent connection Laplacian.
double fiedler_value(const PoseGraph& g);

/// Operator norm of a - b by power iteration on (a - b)^2, stopped once the
/// Rayleigh residual is below 1e-8 relative.
double spectral_norm_diff(const SparseBlockMatrix& a, const SparseBlockMatrix& b);
double spectral_norm(const SparseBlockMatrix& m);

}  // namespace rotavg
