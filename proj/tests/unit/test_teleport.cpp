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
#include "qtele/errors.hpp"
#include "qtele/teleport.hpp"
#include "support/oracles.hpp"

namespace qtele {
namespace {

double overlap(const QuditState& a, const QuditState& b) { return std::norm(a.inner(b)); }

TEST(Channel, Validation) {
  EXPECT_NO_THROW(ChannelSpec::rebalanced_qutrit());
  EXPECT_THROW(ChannelSpec::from_coefficients({0.5, 0.5, 0.5}), InvariantError);
  EXPECT_THROW(ChannelSpec::from_coefficients({1.2, -0.6, 0.0}), InvariantError);
  EXPECT_THROW(ChannelSpec::from_coefficients({1.0}), DimensionError);
  EXPECT_NEAR(ChannelSpec::maximal(3).state().amplitudes().norm(), 1.0, 1e-15);
}

TEST(Decompose, MatchesBellProjectionOracle) {
  std::mt19937_64 rng(11);
  const std::vector<std::vector<double>> channels = {
      ChannelSpec::maximal(3).schmidt_coefficients(),
      ChannelSpec::rebalanced_qutrit().schmidt_coefficients(),
      {0.8, 0.6, 0.0}};
  for (const auto& s : channels) {
    const auto ch = ChannelSpec::from_coefficients(s);
    for (int t = 0; t < 10; ++t) {
      const auto in = QuditState::normalized(testing::random_ket(3, rng));
      double total = 0.0;
      for (const auto& br : decompose_input(ch, in)) {
        const auto ref = testing::bell_projection_oracle(s, in.amplitudes(), br.label.n, br.label.m);
        EXPECT_NEAR(br.probability, ref.probability, 1e-13);
        total += br.probability;
        if (br.conditional_state) {
          EXPECT_NEAR(std::abs(br.conditional_state->amplitudes().dot(ref.photon3)),
                      std::sqrt(ref.probability), 1e-12);
        }
      }
      EXPECT_NEAR(total, 1.0, 1e-13);
    }
  }
}

TEST(Teleport, MaximalChannelIsPerfectForEveryOutcome) {
  std::mt19937_64 rng(3);
  const auto ch = ChannelSpec::maximal(3);
  for (int t = 0; t < 20; ++t) {
    const auto in = QuditState::normalized(testing::random_ket(3, rng));
    for (const auto& br : decompose_input(ch, in)) {
      EXPECT_NEAR(br.probability, 1.0 / 9.0, 1e-13);
      EXPECT_NEAR(overlap(teleport_ideal(ch, in, br.label), in), 1.0, 1e-12);
    }
  }
}

TEST(Teleport, PaperInputsAllTeleported) {
  const auto ch = ChannelSpec::maximal(3);
  const auto inputs = paper_input_states();
  ASSERT_EQ(inputs.size(), 10u);
  for (const auto& in : inputs) {
    EXPECT_NEAR(overlap(teleport_ideal(ch, in, {2, 1}), in), 1.0, 1e-13);
  }
}

TEST(Teleport, NonMaximalChannelDistortsSuperpositions) {
  const auto ch = ChannelSpec::from_coefficients({0.8, 0.6, 0.0});
  const auto in = QuditState::normalized({1.0, 1.0, 0.0});
  const double f = overlap(teleport_ideal(ch, in, {0, 0}), in);
  // Amplitudes end up proportional to (0.8, 0.6, 0).
  EXPECT_NEAR(f, std::pow(0.8 + 0.6, 2) / 2.0, 1e-12);
  EXPECT_LT(f, 1.0);
}

TEST(Teleport, ZeroBranchIsReported) {
  const auto ch = ChannelSpec::from_coefficients({0.8, 0.6, 0.0});
  const auto in = QuditState::basis(3, 2);
  // Level 2 of photon 3 carries no weight, and with m = 0 the input maps there.
  EXPECT_THROW(teleport_ideal(ch, in, {0, 0}), DegenerateOutcomeError);
  for (const auto& br : decompose_input(ch, in)) {
    if (br.label.m == 0) {
      EXPECT_EQ(br.probability, 0.0);
      EXPECT_FALSE(br.conditional_state.has_value());
    }
  }
}

TEST(Teleport, LabelAndDimensionChecks) {
  const auto ch = ChannelSpec::maximal(3);
  EXPECT_THROW(teleport_ideal(ch, QuditState::basis(3, 0), {0, 3}), DimensionError);
  EXPECT_THROW(teleport_ideal(ch, QuditState::basis(2, 0), {0, 0}), DimensionError);
  EXPECT_THROW(decompose_input(ch, QuditState::basis(4, 0)), DimensionError);
}

TEST(Correction, InvertsEveryBranchOfTheMaximalChannel) {
  const auto in = QuditState::normalized({Complex(0.3, 0.1), Complex(-0.5, 0.2), 0.7});
  for (const auto& br : decompose_input(ChannelSpec::maximal(3), in)) {
    const CVector out = correction_unitary(br.label) * br.conditional_state->amplitudes();
    EXPECT_NEAR(std::norm(out.dot(in.amplitudes())), 1.0, 1e-12);
  }
}

TEST(SuccessProbability, ExactRationals) {
  EXPECT_EQ(success_probability(Scheme::maximal_single_basis), Rational::make(1, 54));
  EXPECT_EQ(success_probability(Scheme::nonmaximal_rebalanced), Rational::make(1, 18));
  EXPECT_EQ(Rational::make(16, 288).str(), "1/18");
  EXPECT_EQ(Rational::make(2, -4), (Rational{-1, 2}));
  EXPECT_THROW(Rational::make(1, 0), InvariantError);
}

}  // namespace
}  // namespace qtele
