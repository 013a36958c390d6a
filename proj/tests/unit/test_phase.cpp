// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#include "unit/oracles.hpp"

#include "rotavg/phase.hpp"
#include "rotavg/random.hpp"

#include <doctest.h>

using namespace rotavg;
using cd = std::complex<double>;

namespace {

cd unit(double phi) { return std::polar(1.0, phi); }

PhaseProblem ring(const std::vector<double>& phases, double offset_last = 0.0) {
  const int n = static_cast<int>(phases.size());
  std::vector<PhaseEdge> edges;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    edges.push_back({i, j, unit(phases[i] - phases[j] + (j == 0 ? offset_last : 0.0))});
  }
  return PhaseProblem(n, edges);
}

// Dense cost -z^* H z with z_0 = 1 and the remaining phases free.
double dense_cost(const Eigen::MatrixXcd& h, const std::vector<double>& phi) {
  Eigen::VectorXcd z(static_cast<Eigen::Index>(phi.size()) + 1);
  z[0] = 1.0;
  for (std::size_t k = 0; k < phi.size(); ++k) z[k + 1] = unit(phi[k]);
  return -(z.adjoint() * h * z)(0, 0).real();
}

}  // namespace

TEST_CASE("phase problem validation and dense round trip") {
  CHECK_THROWS_AS(PhaseProblem(3, {{0, 1, cd(2, 0)}, {1, 2, 1.0}, {2, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(PhaseProblem(3, {{0, 1, 1.0}, {0, 1, 1.0}}), GraphError);
  CHECK_THROWS_AS(PhaseProblem(4, {{0, 1, 1.0}, {2, 3, 1.0}}), GraphError);

  Random rng(9);
  std::vector<double> ph(6);
  for (double& x : ph) x = rng.uniform(-3, 3);
  const PhaseProblem p = ring(ph);
  const Eigen::MatrixXcd h = p.to_dense();
  CHECK((h - h.adjoint()).norm() == 0.0);
  const PhaseProblem q = PhaseProblem::from_dense(h);
  CHECK((q.to_dense() - h).norm() < 1e-15);

  Eigen::MatrixXcd bad = h;
  bad(0, 1) *= 1.5;
  CHECK_THROWS_AS(PhaseProblem::from_dense(bad), std::invalid_argument);
  bad = h;
  bad(2, 2) = 1.0;
  CHECK_THROWS_AS(PhaseProblem::from_dense(bad), std::invalid_argument);
  bad = h;
  bad(1, 0) = -bad(1, 0);
  CHECK_THROWS_AS(PhaseProblem::from_dense(bad), std::invalid_argument);
}

TEST_CASE("realified matrix has the same quadratic form") {
  Random rng(4);
  std::vector<double> ph(7);
  for (double& x : ph) x = rng.uniform(-3, 3);
  const PhaseProblem p = ring(ph, 0.3);
  const Eigen::MatrixXcd h = p.to_dense();
  const Eigen::MatrixXd r = p.realified().to_dense();
  Eigen::VectorXcd z(7);
  Eigen::VectorXd x(14);
  for (int i = 0; i < 7; ++i) {
    z[i] = cd(rng.normal(), rng.normal());
    x[2 * i] = z[i].real();
    x[2 * i + 1] = z[i].imag();
  }
  CHECK(std::abs((z.adjoint() * h * z)(0, 0).real() - x.dot(r * x)) < 1e-12);
  CHECK(phase_cost(p, z) == doctest::Approx(-x.dot(r * x)));
  // Complex eigenvalues appear twice in the real form.
  const Eigen::VectorXd ch = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h).eigenvalues();
  const Eigen::VectorXd rr = oracle::dense_eigenvalues(r);
  for (int i = 0; i < 7; ++i) {
    CHECK(std::abs(rr[2 * i] - ch[i]) < 1e-12);
    CHECK(std::abs(rr[2 * i + 1] - ch[i]) < 1e-12);
  }
}

TEST_CASE("noiseless rings recover the latent phases") {
  for (int n : {10, 100}) {
    Random rng(static_cast<std::uint64_t>(n));
    std::vector<double> ph(n);
    for (double& x : ph) x = rng.uniform(-oracle::kPi, oracle::kPi);
    const PhaseResult res = phase_sync_solve(ring(ph));
    CHECK(res.converged);
    CHECK(res.certified);
    CHECK(std::abs(res.lambda_min) < 1e-10);
    CHECK(res.perturbed_entries == 0);
    CHECK(res.z[0] == cd(1.0, 0.0));
    for (int i = 0; i < n; ++i) CHECK(std::abs(res.z[i] - unit(ph[i] - ph[0])) < 1e-9);
    CHECK(res.cost == doctest::Approx(-2.0 * n).epsilon(1e-12));
  }
}

TEST_CASE("three-cycle with a quarter-turn offset") {
  const PhaseProblem p = ring({0.0, 0.0, 0.0}, oracle::kPi / 2);
  const PhaseResult res = phase_sync_solve(p);
  CHECK(res.certified);
  CHECK(std::abs(res.cost - (-6.0 * std::cos(oracle::kPi / 6))) < 1e-8);

  // Oracle: grid over the two free phases, then alternating golden sections.
  const Eigen::MatrixXcd h = p.to_dense();
  std::vector<double> best{0.0, 0.0};
  double fbest = dense_cost(h, best);
  for (int a = 0; a < 360; ++a) {
    for (int b = 0; b < 360; ++b) {
      const std::vector<double> phi{a * oracle::kPi / 180, b * oracle::kPi / 180};
      const double f = dense_cost(h, phi);
      if (f < fbest) fbest = f, best = phi;
    }
  }
  double fmin = fbest;
  for (int round = 0; round < 60; ++round) {
    for (int k = 0; k < 2; ++k) {
      // Golden-section minimum value along one phase, ternary search for its argmin.
      double lo = best[k] - 0.05, hi = best[k] + 0.05;
      auto along = [&](double x) {
        std::vector<double> phi = best;
        phi[k] = x;
        return dense_cost(h, phi);
      };
      fmin = oracle::golden_section(along, lo, hi, 1e-12);
      while (hi - lo > 1e-12) {
        const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (along(m1) < along(m2)) {
          hi = m2;
        } else {
          lo = m1;
        }
      }
      best[k] = 0.5 * (lo + hi);
    }
  }
  CHECK(std::abs(res.cost - fmin) < 1e-8);
  CHECK(std::abs(res.cost - dense_cost(h, best)) < 1e-8);
}

TEST_CASE("ring with a corrupted chord is certified") {
  const int n = 100;
  std::vector<double> ph(n);
  for (int i = 0; i < n; ++i) ph[i] = 2 * oracle::kPi * i / n;
  std::vector<PhaseEdge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, unit(ph[i] - ph[(i + 1) % n])});
  edges.push_back({0, 50, unit(ph[0] - ph[50] - oracle::kPi / 4)});
  const PhaseProblem p(n, edges);
  const PhaseResult res = phase_sync_solve(p);
  REQUIRE(res.converged);
  CHECK(res.certified);
  // Independent check of the returned pair with a dense solver.
  const Eigen::MatrixXcd m = Eigen::MatrixXcd(res.lambda.cast<cd>().asDiagonal()) - p.to_dense();
  const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m).eigenvalues()[0];
  CHECK(lmin >= -res.epsilon_used);
  CHECK(std::abs(lmin - res.lambda_min) < 1e-10);
  // Optimality: the cost beats the latent phases.
  Eigen::VectorXcd latent(n);
  for (int i = 0; i < n; ++i) latent[i] = unit(ph[i]);
  CHECK(res.cost <= phase_cost(p, latent) + 1e-12);
}

TEST_CASE("phase solver agrees with the SO(2) solver on the realified problem") {
  Random rng(13);
  std::vector<PhaseEdge> edges;
  const int n = 30;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, unit(rng.normal() * 0.3)});
  for (int k = 0; k < 20; ++k) {
    const int i = static_cast<int>(rng.uniform(0, n - 3));
    edges.push_back({i, i + 2, unit(rng.normal() * 0.3)});
  }
  // Duplicate chords are possible; keep the first.
  std::vector<PhaseEdge> unique;
  for (const PhaseEdge& e : edges) {
    bool dup = false;
    for (const PhaseEdge& u : unique) dup = dup || (u.i == e.i && u.j == e.j);
    if (!dup) unique.push_back(e);
  }
  const PhaseProblem p(n, unique);
  const PhaseResult a = phase_sync_solve(p);
  std::vector<Edge> planar;
  for (const PhaseEdge& e : unique) planar.push_back({e.i, e.j, rotation_2d(std::arg(e.value)), 1.0});
  const SolveResult b = primal_dual_solve(PoseGraph(n, planar));
  REQUIRE(a.certified);
  REQUIRE(b.certified);
  CHECK(std::abs(a.cost - 0.5 * b.state.cost) < 1e-9);
}
