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

// Ideal teleportation algebra: Bell decomposition of input (x) channel,
// branch probabilities, corrections and analytic success probabilities.

#ifndef QTELE_TELEPORT_HPP
#define QTELE_TELEPORT_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtele/types.hpp"

namespace qtele {

/// Schmidt-diagonal channel sum_k s_k |k>|k>.
class ChannelSpec {
 public:
  static ChannelSpec maximal(int dim);
  /// Throws InvariantError unless sum s_k^2 = 1 within 1e-12 and s_k >= 0.
  static ChannelSpec from_coefficients(std::vector<double> schmidt);
  /// (2|00> + 2|11> + |22>) / 3.
  static ChannelSpec rebalanced_qutrit();

  int dim() const { return static_cast<int>(s_.size()); }
  const std::vector<double>& schmidt_coefficients() const { return s_; }
  BipartiteState state() const;

 private:
  explicit ChannelSpec(std::vector<double> s) : s_(std::move(s)) {}
  std::vector<double> s_;
};

struct OutcomeBranch {
  BellLabel label;
  double probability = 0.0;
  /// Photon-3 state before correction; empty when the branch has zero weight.
  std::optional<QuditState> conditional_state;
};

/// Nine branches ordered by (m, n) as label {n, m} with n fastest.
std::vector<OutcomeBranch> decompose_input(const ChannelSpec& channel, const QuditState& input);

/// The Weyl operator that maps the (n, m) conditional state back onto the input.
CMatrix correction_unitary(BellLabel label, int dim = 3);

/// Corrected photon-3 state for one Bell outcome. Throws DegenerateOutcomeError
/// on a zero-probability branch.
QuditState teleport_ideal(const ChannelSpec& channel, const QuditState& input, BellLabel label);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
  friend Rational operator*(Rational a, Rational b) { return make(a.num * b.num, a.den * b.den); }
  friend Rational operator/(Rational a, Rational b) { return make(a.num * b.den, a.den * b.num); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class Scheme { maximal_single_basis, nonmaximal_rebalanced };

/// 1/54 and 1/18 respectively, composed from the per-step factors.
Rational success_probability(Scheme scheme);

/// The ten states phi_1 .. phi_10 used as teleportation inputs.
std::vector<QuditState> paper_input_states();

}  // namespace qtele

#endif  // QTELE_TELEPORT_HPP
