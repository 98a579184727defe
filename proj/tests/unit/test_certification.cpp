// Copyright 2026 The qtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qtele/algebra.hpp"
#include "qtele/certification.hpp"
#include "qtele/errors.hpp"
#include "qtele/process.hpp"
#include "support/oracles.hpp"

namespace qtele {
namespace {

DensityMatrix dm(const CMatrix& m) { return DensityMatrix::from_matrix(m); }

TEST(Robustness, MaximallyCoherentStateIsOneHalf) {
  const auto rho = DensityMatrix::pure(QuditState::normalized({1.0, 1.0, 1.0}));
  const auto r = robustness_mu(rho);
  EXPECT_NEAR(r.mu, 0.5, 1e-5);
  EXPECT_NEAR(testing::grid_robustness(rho.matrix(), 201), 0.5, 2e-3);
  EXPECT_EQ(certify(rho).verdict, Verdict::genuine_qutrit);
}

TEST(Robustness, PhaseInvariant) {
  for (double a : {0.3, 1.1, 2.9}) {
    for (double b : {0.0, 0.7, 3.1}) {
      EXPECT_NEAR(robustness_mu(dm(testing::coherent_density(a, b))).mu, 0.5, 1e-5);
    }
  }
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
  for (int t = 0; t < 20; ++t) {
    const CMatrix rho = testing::random_density(3, 2, rng);
    CMatrix u = CMatrix::Zero(3, 3);
    for (int k = 0; k < 3; ++k) u(k, k) = std::polar(1.0, ph(rng));
    EXPECT_NEAR(robustness_mu(dm(rho)).mu, robustness_mu(dm(u * rho * u.adjoint())).mu, 2e-6);
  }
}

TEST(Robustness, WhiteNoiseFamily) {
  // (1 - w)|psi><psi| + w I/3 with psi maximally coherent: mu = 1 - 1/(2(1 - w)).
  const CMatrix pure = testing::coherent_density(0.0, 0.0);
  for (double w : {0.0, 0.1, 0.2, 0.4}) {
    const CMatrix rho = (1.0 - w) * pure + w * CMatrix::Identity(3, 3) / 3.0;
    EXPECT_NEAR(robustness_mu(dm(rho)).mu, 1.0 - 1.0 / (2.0 * (1.0 - w)), 1e-5) << w;
  }
  const CMatrix noisy = 0.4 * pure + 0.6 * CMatrix::Identity(3, 3) / 3.0;
  EXPECT_EQ(certify(dm(noisy)).verdict, Verdict::qubit_simulable);
  EXPECT_TRUE(certify(dm(noisy)).decomposition.has_value());
}

TEST(Criteria, FidelityTwoThirdsIsNotNecessary) {
  const auto psi = QuditState::normalized(
      {std::sqrt(1.0 / 8.0), std::sqrt(1.0 / 8.0), -std::sqrt(3.0 / 4.0)});
  const auto rho = DensityMatrix::pure(psi);
  EXPECT_NEAR(nonlinear_criterion(rho), 0.25 + 2.0 * std::sqrt(3.0 / 8.0), 1e-12);
  EXPECT_NEAR(nonlinear_criterion(rho), 1.475, 1e-3);
  EXPECT_NEAR(fidelity_witness(rho), 0.0084, 1e-4);
  EXPECT_LT(fidelity_witness(rho), 2.0 / 3.0);
  const auto rep = certify(rho);
  EXPECT_EQ(rep.verdict, Verdict::genuine_qutrit);
  EXPECT_GT(rep.mu, 0.0);
}

TEST(Criteria, HierarchyOnRandomStates) {
  std::mt19937_64 rng(1000);
  int linear_hits = 0;
  int nonlinear_hits = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto rho = dm(testing::random_density(3, 1 + t % 3, rng));
    const auto rep = certify(rho);
    double lin = 0.0;
    for (double v : rep.linear_values) lin = std::max(lin, v);
    const bool genuine = rep.verdict == Verdict::genuine_qutrit;
    if (lin > 1.0) {
      ++linear_hits;
      EXPECT_GT(rep.nonlinear_lhs, 1.0);
    }
    if (rep.nonlinear_lhs > 1.0) {
      ++nonlinear_hits;
      EXPECT_TRUE(genuine);
    }
    if (rep.fidelity_witness > 2.0 / 3.0) {
      EXPECT_TRUE(genuine);
    }
    // The verdict is taken at the threshold; mu carries the bisection width.
    if (genuine) {
      EXPECT_GT(rep.mu, 0.0);
    }
    if (rep.mu > 2e-6) {
      EXPECT_TRUE(genuine);
    }
  }
  EXPECT_GT(nonlinear_hits, linear_hits);
  EXPECT_GT(linear_hits, 0);
}

TEST(Feasibility, DecompositionIsSound) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 50; ++t) {
    const CMatrix rho = testing::random_density(3, 3, rng);
    const auto r = robustness_mu(dm(rho));
    const CMatrix target = r.mu * CMatrix::Identity(3, 3) / 3.0 + (1.0 - r.mu) * rho;
    EXPECT_LT((r.decomposition.sum() - target).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT(r.decomposition.constraint_violation(), 1e-9);
    for (const CMatrix* s : {&r.decomposition.sigma_01, &r.decomposition.sigma_02,
                             &r.decomposition.sigma_12}) {
      EXPECT_GE(min_eigenvalue(*s), -1e-9);
    }
    // Just below mu the target is no longer a qubit mixture.
    if (r.mu > -1.0) {
      EXPECT_FALSE(mixture_feasibility(rho, r.mu - 1e-4).has_value());
    }
  }
}

TEST(Feasibility, QubitMixturesAreSimulable) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    CMatrix rho = CMatrix::Zero(3, 3);
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    double total = 0.0;
    for (const auto& pr : pairs) {
      const CVector q = testing::random_ket(2, rng);
      CVector v = CVector::Zero(3);
      v(pr[0]) = q(0);
      v(pr[1]) = q(1);
      const double w = u(rng);
      rho += w * v * v.adjoint();
      total += w;
    }
    rho /= total;
    const auto rep = certify(dm(rho));
    EXPECT_EQ(rep.verdict, Verdict::qubit_simulable);
    EXPECT_LE(rep.mu, 1e-6);
    EXPECT_LE(rep.nonlinear_lhs, 1.0 + 1e-12);
    EXPECT_LE(rep.fidelity_witness, 2.0 / 3.0 + 1e-12);
  }
}

TEST(Feasibility, AgreesWithGridOracle) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 15; ++t) {
    const CMatrix rho = testing::random_density(3, 1 + t % 2, rng);
    const double mu = robustness_mu(dm(rho)).mu;
    const double grid = testing::grid_robustness(rho, 120, 1e-4);
    // The grid can only find splits it samples, so it sits at or above mu.
    EXPECT_GE(grid, mu - 1e-4);
    EXPECT_LT(grid - mu, 0.02) << t;
  }
}

TEST(Feasibility, MaximallyMixedHitsLowerBracket) {
  EXPECT_EQ(robustness_mu(DensityMatrix::maximally_mixed(3)).mu, -1.0);
  EXPECT_THROW(mixture_feasibility(CMatrix::Identity(2, 2), 0.0), DimensionError);
}

TEST(Grid, Phases) {
  const PhaseGrid open{4, 4, false};
  EXPECT_NEAR(open.phases(4).back(), 3.0 * kPi / 4.0, 1e-15);
  const PhaseGrid closed{4, 4, true};
  EXPECT_NEAR(closed.phases(4).back(), kPi, 1e-15);
  EXPECT_EQ(PhaseGrid{}.states().size(), 400u);
  EXPECT_THROW(open.phases(0), InvariantError);
}

TEST(Batch, IdealAndDepolarised) {
  const auto ideal = batch_certification(ProcessMatrix::ideal(), PhaseGrid{});
  EXPECT_EQ(ideal.n_genuine, 400);
  EXPECT_NEAR(ideal.mean_mu_genuine, 0.5, 1e-5);
  EXPECT_LT(ideal.std_mu_genuine, 1e-5);
  const auto dead = batch_certification(ProcessMatrix::white_noise_mixture(1.0), PhaseGrid{5, 5});
  EXPECT_EQ(dead.n_genuine, 0);
  EXPECT_EQ(dead.n_simulable, 25);
  EXPECT_EQ(dead.mus.size(), 25u);
  const auto mild = batch_certification(ProcessMatrix::white_noise_mixture(0.2), PhaseGrid{5, 5});
  EXPECT_EQ(mild.n_genuine, 25);
  // I/9 in chi maps every state to I/3, so the output is 0.8 psi + 0.2 I/3.
  EXPECT_NEAR(mild.mean_mu_genuine, 1.0 - 1.0 / (2.0 * 0.8), 1e-5);
}

}  // namespace
}  // namespace qtele
