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

#include "qtele/teleport.hpp"

#include <cmath>
#include <numeric>

#include "qtele/algebra.hpp"
#include "qtele/errors.hpp"

namespace qtele {
namespace {

int mod(int a, int d) { return ((a % d) + d) % d; }

// Probability below which a branch is treated as empty.
constexpr double kZeroBranch = 1e-15;

// Unnormalised photon-3 amplitudes after projecting photons 1, 2 onto <psi_nm|.
CVector conditional_amplitudes(const ChannelSpec& ch, const QuditState& in, BellLabel lab) {
  const int d = ch.dim();
  const auto& s = ch.schmidt_coefficients();
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  CVector c(d);
  for (int k = 0; k < d; ++k) {
    const int j = mod(k - lab.m, d);
    c(k) = norm * std::conj(root_of_unity(j * lab.n, d)) * in[j] * s[k];
  }
  return c;
}

}  // namespace

ChannelSpec ChannelSpec::maximal(int dim) {
  if (dim < 2) throw DimensionError("ChannelSpec: dim < 2");
  return ChannelSpec(std::vector<double>(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
}

ChannelSpec ChannelSpec::from_coefficients(std::vector<double> schmidt) {
  if (schmidt.size() < 2) throw DimensionError("ChannelSpec: need at least two coefficients");
  double sum = 0.0;
  for (double v : schmidt) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvariantError("ChannelSpec: coefficients must be finite and non-negative");
    }
    sum += v * v;
  }
  if (std::abs(sum - 1.0) > tol::kNorm) {
    throw InvariantError("ChannelSpec: sum of squared coefficients is " + std::to_string(sum));
  }
  return ChannelSpec(std::move(schmidt));
}

ChannelSpec ChannelSpec::rebalanced_qutrit() {
  return from_coefficients({2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0});
}

BipartiteState ChannelSpec::state() const {
  const int d = dim();
  CVector a = CVector::Zero(d * d);
  for (int k = 0; k < d; ++k) a(k * d + k) = s_[k];
  return BipartiteState::from_amplitudes(d, std::move(a));
}

std::vector<OutcomeBranch> decompose_input(const ChannelSpec& channel, const QuditState& input) {
  if (channel.dim() != input.dim()) throw DimensionError("decompose_input: dimension mismatch");
  const int d = channel.dim();
  std::vector<OutcomeBranch> out;
  out.reserve(static_cast<std::size_t>(d * d));
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const BellLabel lab{n, m};
      const CVector c = conditional_amplitudes(channel, input, lab);
      OutcomeBranch br;
      br.label = lab;
      br.probability = c.squaredNorm();
      if (br.probability > kZeroBranch) br.conditional_state = QuditState::normalized(c);
      out.push_back(std::move(br));
    }
  }
  return out;
}

CMatrix correction_unitary(BellLabel label, int dim) { return weyl_operator(label, dim); }

QuditState teleport_ideal(const ChannelSpec& channel, const QuditState& input, BellLabel label) {
  if (channel.dim() != input.dim()) throw DimensionError("teleport_ideal: dimension mismatch");
  if (!label.valid_for(channel.dim())) throw DimensionError("teleport_ideal: label out of range");
  const CVector c = conditional_amplitudes(channel, input, label);
  if (c.squaredNorm() <= kZeroBranch) {
    throw DegenerateOutcomeError("teleport_ideal: outcome (" + std::to_string(label.n) + "," +
                                 std::to_string(label.m) + ") has zero probability");
  }
  return QuditState::normalized(correction_unitary(label, channel.dim()) * c);
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvariantError("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g > 1 ? Rational{num / g, den / g} : Rational{num, den};
}

Rational success_probability(Scheme scheme) {
  // One of nine Bell states, one of three local measurement bases, and the
  // auxiliary pair passing PBS2/PBS3 with one photon per port half the time.
  const Rational one_bell = Rational::make(1, 9);
  const Rational one_basis = Rational::make(1, 3);
  const Rational aux = Rational::make(1, 2);
  switch (scheme) {
    case Scheme::maximal_single_basis:
      return one_bell * one_basis * aux;
    case Scheme::nonmaximal_rebalanced:
      // Sixteen accepted H/V patterns of 1/288 each.
      return Rational::make(16, 288);
  }
  throw InvariantError("success_probability: unknown scheme");
}

std::vector<QuditState> paper_input_states() {
  const Complex one{1.0, 0.0};
  const Complex zero{0.0, 0.0};
  const Complex i{0.0, 1.0};
  return {
      QuditState::basis(3, 0),
      QuditState::basis(3, 1),
      QuditState::basis(3, 2),
      QuditState::normalized({one, one, zero}),
      QuditState::normalized({one, i, zero}),
      QuditState::normalized({one, zero, one}),
      QuditState::normalized({one, zero, i}),
      QuditState::normalized({zero, one, one}),
      QuditState::normalized({zero, one, i}),
      QuditState::normalized({one, one, one}),
  };
}

}  // namespace qtele
