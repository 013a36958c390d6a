// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotavg/eigen.hpp"

#include "rotavg/random.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>

namespace rotavg {

namespace {

using Sparse = SparseBlockMatrix::Sparse;
using ColumnSparse = Eigen::SparseMatrix<double>;
using Operator = std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>;

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string scientific(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Gershgorin {
  double lower = 0.0;
  double upper = 0.0;
  double norm() const { return std::max(std::abs(lower), std::abs(upper)); }
};

Gershgorin gershgorin(const Sparse& m) {
  Gershgorin g{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (int r = 0; r < m.outerSize(); ++r) {
    double center = 0.0, radius = 0.0;
    for (Sparse::InnerIterator it(m, r); it; ++it) {
      if (it.col() == r) {
        center = it.value();
      } else {
        radius += std::abs(it.value());
      }
    }
    g.lower = std::min(g.lower, center - radius);
    g.upper = std::max(g.upper, center + radius);
  }
  return g;
}

// Orthonormal Krylov basis with its operator image; columns [0, size) valid.
class KrylovBasis {
 public:
  KrylovBasis(Eigen::Index dim, int capacity, Random& rng)
      : q_(dim, capacity), w_(dim, capacity), rng_(rng) {}

  int size() const { return size_; }
  int capacity() const { return static_cast<int>(q_.cols()); }
  auto q() const { return q_.leftCols(size_); }
  auto w() const { return w_.leftCols(size_); }

  // Orthogonalizes the columns of `v` against the basis (two passes of
  // classical Gram-Schmidt) and appends those that survive. Columns that
  // collapse are replaced by random directions. Returns the number appended.
  int append(Eigen::MatrixXd v, const Operator& op) {
    const int first = size_;
    for (Eigen::Index c = 0; c < v.cols() && size_ < capacity(); ++c) {
      Eigen::VectorXd x = v.col(c);
      bool accepted = orthogonalize(x);
      for (int attempt = 0; !accepted && attempt < 3; ++attempt) {
        x = rng_.normal_matrix(q_.rows(), 1);
        accepted = orthogonalize(x);
      }
      if (!accepted) break;  // basis spans the whole space
      q_.col(size_++) = x;
    }
    if (size_ > first) {
      w_.middleCols(first, size_ - first) = op(q_.middleCols(first, size_ - first));
    }
    return size_ - first;
  }

  // Keeps span(Q S) with S orthonormal (size x keep).
  void compress(const Eigen::MatrixXd& s) {
    const int keep = static_cast<int>(s.cols());
    const Eigen::MatrixXd new_q = q() * s;
    const Eigen::MatrixXd new_w = w() * s;
    q_.leftCols(keep) = new_q;
    w_.leftCols(keep) = new_w;
    size_ = keep;
  }

 private:
  bool orthogonalize(Eigen::VectorXd& x) const {
    const double initial = x.norm();
    if (initial == 0.0) return false;
    for (int pass = 0; pass < 2; ++pass) {
      if (size_ > 0) x -= q_.leftCols(size_) * (q_.leftCols(size_).transpose() * x);
    }
    const double norm = x.norm();
    if (norm <= 1e-10 * initial) return false;
    x /= norm;
    return true;
  }

  Eigen::MatrixXd q_;
  Eigen::MatrixXd w_;
  Random& rng_;
  int size_ = 0;
};

struct RitzPairs {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd values;
  Eigen::VectorXd residuals;
};

// Rayleigh-Ritz with respect to `m` itself on the span of `y`.
RitzPairs rayleigh_ritz(const Sparse& m, const Eigen::MatrixXd& y) {
  const Eigen::MatrixXd my = m * y;
  Eigen::MatrixXd g = y.transpose() * my;
  g = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  RitzPairs out;
  out.vectors = y * es.eigenvectors();
  const Eigen::MatrixXd mv = my * es.eigenvectors();
  out.values = es.eigenvalues();
  out.residuals.resize(y.cols());
  for (Eigen::Index c = 0; c < y.cols(); ++c) {
    out.residuals[c] = (mv.col(c) - out.values[c] * out.vectors.col(c)).norm();
  }
  return out;
}

// Factors m - sigma I, lowering sigma until the factorization succeeds.
// When the initial shift fails, bisection between the last failing and the
// first succeeding shift moves sigma up towards lambda_1 to keep the
// inverted spectrum well separated.
struct ShiftedFactor {
  std::unique_ptr<Eigen::SimplicialLLT<ColumnSparse, Eigen::Lower, Eigen::AMDOrdering<int>>> llt;
  double shift = 0.0;
};

ShiftedFactor factor_shifted(const Sparse& m, double initial_shift, const Gershgorin& bounds) {
  using Factor = Eigen::SimplicialLLT<ColumnSparse, Eigen::Lower, Eigen::AMDOrdering<int>>;
  const Eigen::Index n = m.rows();
  ColumnSparse identity(n, n);
  identity.setIdentity();
  const ColumnSparse base = ColumnSparse(m);
  // Every shifted matrix shares the pattern of base - I, so the symbolic
  // analysis runs once.
  auto llt = std::make_unique<Factor>();
  llt->analyzePattern(ColumnSparse(base - identity));
  auto succeeds = [&](double shift) {
    llt->factorize(ColumnSparse(base - shift * identity));
    return llt->info() == Eigen::Success;
  };

  double shift = std::min(initial_shift, bounds.upper);
  double step = std::max(std::abs(initial_shift), 1e-3 * bounds.norm() + 1e-300);
  const double safe = bounds.lower - std::max(std::abs(initial_shift), 1e-6 * bounds.norm() + 1e-12);
  double failed = shift;
  bool found = false;
  for (int attempt = 0; attempt < 64; ++attempt) {
    if (succeeds(shift)) {
      if (attempt == 0) return {std::move(llt), shift};
      found = true;
      break;
    }
    if (shift <= safe) break;
    failed = shift;
    shift = std::max(shift - step, safe);
    step *= 2.0;
  }
  if (!found) return {};
  const double width = 1e-3 * bounds.norm() + std::abs(initial_shift);
  for (int k = 0; k < 32 && failed - shift > width; ++k) {
    const double mid = 0.5 * (shift + failed);
    if (succeeds(mid)) {
      shift = mid;
    } else {
      failed = mid;
    }
  }
  if (!succeeds(shift)) return {};
  return {std::move(llt), shift};
}

}  // namespace

EigenResult smallest_eigenpairs(const SparseBlockMatrix& m, int count, const EigenOptions& options) {
  return smallest_eigenpairs(m.sparse(), count, options);
}

EigenResult smallest_eigenpairs(const Sparse& m, int count, const EigenOptions& options) {
  const Eigen::Index dim = m.rows();
  if (m.cols() != dim || dim == 0) throw std::invalid_argument("matrix must be square and nonempty");
  if (count < 1 || count > dim) throw std::invalid_argument("eigenpair count out of range");
  if (!(options.tol > 0.0)) throw std::invalid_argument("eigensolver tolerance must be positive");

  const Gershgorin bounds = gershgorin(m);
  const double norm = std::max(bounds.norm(), std::numeric_limits<double>::min());
  const double tol = std::max(options.tol, 64.0 * kEps);

  EigenResult result;
  result.norm_bound = norm;
  result.tolerance = tol;
  result.strategy = options.strategy;

  Operator op;
  ShiftedFactor factor;
  if (options.strategy == EigenStrategy::kShiftInvert) {
    factor = factor_shifted(m, options.shift, bounds);
    if (!factor.llt) {
      result.strategy = EigenStrategy::kFolded;
    } else {
      result.shift = factor.shift;
      auto* llt = factor.llt.get();
      op = [llt](const Eigen::MatrixXd& x) -> Eigen::MatrixXd { return llt->solve(x); };
    }
  }
  if (result.strategy == EigenStrategy::kFolded) {
    const double c = bounds.upper;
    result.shift = c;
    op = [&m, c](const Eigen::MatrixXd& x) -> Eigen::MatrixXd { return c * x - m * x; };
  }

  const int block = static_cast<int>(
      std::min<Eigen::Index>(dim, std::max(count, options.block_size > 0 ? options.block_size : count)));
  int capacity = options.max_basis > 0 ? options.max_basis : std::max(20 * block, 60);
  capacity = static_cast<int>(std::min<Eigen::Index>(dim, std::max(capacity, 2 * block + count)));
  const long max_steps = options.max_block_steps > 0
                             ? options.max_block_steps
                             : std::max(100L, static_cast<long>(50.0 * count * std::sqrt(double(dim))));

  Random rng(options.seed);
  KrylovBasis basis(dim, capacity, rng);
  basis.append(rng.normal_matrix(dim, block), op);
  result.block_steps = 1;

  // Columns whose operator image seeds the next block.
  std::vector<int> frontier(basis.size());
  for (int c = 0; c < basis.size(); ++c) frontier[c] = c;

  Eigen::VectorXd best_residuals = Eigen::VectorXd::Constant(count, std::numeric_limits<double>::infinity());
  // Best Ritz set seen so far, returned if the residuals stagnate above the
  // target at a level still within kStagnationSlack of it.
  constexpr double kStagnationSlack = 1e4;
  constexpr int kStagnationRestarts = 8;
  RitzPairs best;
  double best_max = std::numeric_limits<double>::infinity();
  int stalled = 0;
  auto finish = [&](const RitzPairs& pairs) {
    result.eigenvalues = pairs.values;
    result.eigenvectors = pairs.vectors;
    result.residual_norms = pairs.residuals;
    return result;
  };
  // Largest operator eigenvalues are the wanted ones; they come last.
  auto projected = [&] {
    Eigen::MatrixXd t = basis.q().transpose() * basis.w();
    t = 0.5 * (t + t.transpose());
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(t);
  };
  auto ritz_of = [&](const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es) {
    return rayleigh_ritz(m, basis.q() * es.eigenvectors().rightCols(count));
  };
  // Block steps between early convergence checks while the basis grows.
  constexpr int kCheckEvery = 4;
  for (;;) {
    int since_check = 0;
    while (basis.size() < basis.capacity()) {
      Eigen::MatrixXd next(dim, static_cast<Eigen::Index>(frontier.size()));
      for (std::size_t c = 0; c < frontier.size(); ++c) next.col(c) = basis.w().col(frontier[c]);
      const int first = basis.size();
      const int added = basis.append(std::move(next), op);
      ++result.block_steps;
      if (added == 0) break;
      frontier.resize(added);
      for (int c = 0; c < added; ++c) frontier[c] = first + c;
      if (++since_check == kCheckEvery && basis.size() >= count + block && basis.size() < basis.capacity()) {
        since_check = 0;
        RitzPairs early = ritz_of(projected());
        if (early.residuals.maxCoeff() <= tol * norm) return finish(early);
      }
    }

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es = projected();
    const int k = basis.size();
    RitzPairs ritz = ritz_of(es);
    best_residuals = best_residuals.cwiseMin(ritz.residuals);
    const double current_max = ritz.residuals.maxCoeff();
    const bool complete = k == dim;
    if (current_max <= tol * norm || complete) return finish(ritz);
    if (current_max < 0.9 * best_max) {
      stalled = 0;
    } else {
      ++stalled;
    }
    if (current_max < best_max) {
      best_max = current_max;
      best = std::move(ritz);
    }
    if (stalled >= kStagnationRestarts && best_max <= kStagnationSlack * tol * norm) {
      result.stagnated = true;
      return finish(best);
    }
    if (result.block_steps >= max_steps) {
      throw EigenSolverError("eigensolver did not converge in " + std::to_string(result.block_steps) +
                                 " block steps (best relative residual " +
                                 scientific(best_residuals.maxCoeff() / norm) + ")",
                             best_residuals);
    }

    // Thick restart on the leading Ritz vectors.
    const int keep = std::min(k - block, std::max(count + block, k / 2));
    basis.compress(es.eigenvectors().rightCols(keep));
    ++result.restarts;
    frontier.resize(block);
    for (int c = 0; c < block; ++c) frontier[c] = keep - 1 - c;
  }
}

}  // namespace rotavg
