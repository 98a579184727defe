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

#ifndef QTELE_OPTICS_FOCK_STATE_HPP
#define QTELE_OPTICS_FOCK_STATE_HPP

#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "qtele/optics/mode.hpp"
#include "qtele/types.hpp"

namespace qtele::optics {

/// Occupation pattern stored as a sorted multiset of modes.
using Pattern = std::vector<OpticalMode>;

/// One monomial of a creation-operator polynomial: amplitude * prod a^dag.
struct CreationTerm {
  std::vector<OpticalMode> modes;
  Complex amplitude;
};

/// Superposition of occupation-number basis states with a fixed photon number.
/// Amplitudes refer to normalised Fock basis vectors.
class FockState {
 public:
  static constexpr std::size_t kMaxModes = 64;

  /// Vacuum over the given arm universe.
  static FockState vacuum(std::set<Arm> universe);

  /// Multiplies by sum_j amp_j prod a^dag(modes_j). Every monomial must create
  /// the same number of photons.
  FockState create(const std::vector<CreationTerm>& poly) const;

  const std::map<Pattern, Complex>& terms() const { return terms_; }
  const std::set<Arm>& universe() const { return universe_; }
  int total_photons() const { return photons_; }
  double norm2() const;
  bool empty() const { return terms_.empty(); }
  std::size_t distinct_modes() const;
  Complex amplitude(Pattern p) const;

  FockState filtered(const std::function<bool(const Pattern&)>& keep) const;
  FockState scaled(Complex factor) const;

  /// Builds a state from explicit terms; patterns are sorted, zero terms dropped.
  static FockState from_terms(std::set<Arm> universe, int photons,
                              const std::vector<std::pair<Pattern, Complex>>& terms);

  // Accumulation used by the element code; removes numerically zero terms.
  void add(Pattern p, Complex amp);
  void prune(double eps = 1e-15);

 private:
  std::set<Arm> universe_;
  int photons_ = 0;
  std::map<Pattern, Complex> terms_;
};

/// Number of photons in `p` occupying `m`.
int occupation(const Pattern& p, const OpticalMode& m);

}  // namespace qtele::optics

#endif  // QTELE_OPTICS_FOCK_STATE_HPP
