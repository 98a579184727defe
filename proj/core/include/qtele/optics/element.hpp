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

// Linear optical elements and post-selection.
//
// Conventions: a PBS transmits H (stays in its arm) and reflects V (swaps
// arms); a BD moves V one rail down (r -> r-1) and leaves H; a HWP at angle t
// maps H -> cos2t H + sin2t V and V -> sin2t H - cos2t V. Route is a pure
// relabelling of rails.

#ifndef QTELE_OPTICS_ELEMENT_HPP
#define QTELE_OPTICS_ELEMENT_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtele/optics/fock_state.hpp"

namespace qtele::optics {

enum class ElementKind { PBS, BD, HWP, PhaseShift, Route };

struct OpticalElement {
  ElementKind kind = ElementKind::PBS;
  std::vector<Arm> arms;
  std::optional<int> rail;     // restricts HWP and PhaseShift to one rail
  std::optional<Pol> pol;      // restricts PhaseShift to one polarisation
  double parameter = 0.0;      // HWP angle or phase, radians
  std::map<int, int> rail_map; // Route only
  std::string label;

  static OpticalElement pbs(Arm first, Arm second);
  static OpticalElement beam_displacer(std::vector<Arm> arms);
  static OpticalElement hwp(double degrees, std::vector<Arm> arms,
                            std::optional<int> rail = std::nullopt);
  static OpticalElement phase_shift(double phase, Arm arm, std::optional<int> rail,
                                    std::optional<Pol> pol);
  static OpticalElement route(std::vector<Arm> arms, std::map<int, int> rail_map);

  bool acts_on(const OpticalMode& m) const;

  /// Image of a^dag(m) as a list of (output mode, coefficient).
  std::vector<std::pair<OpticalMode, Complex>> transfer(const OpticalMode& m) const;

  /// Single-photon transfer matrix on a mode list closed under the element.
  CMatrix transfer_matrix(const std::vector<OpticalMode>& modes) const;
};

/// Lifts the element's single-photon map to occupation patterns. Throws
/// ModeResolutionError for an arm outside the state's universe.
FockState apply_element(const FockState& state, const OpticalElement& element);

struct PhotonRequirement {
  Arm arm = Arm::a;
  std::optional<int> rail;
  std::optional<Pol> pol;
  int count = 0;
};

/// Conjunction of exact photon counts on disjoint mode groups.
class PostSelectionPattern {
 public:
  /// Throws InvariantError for negative counts or overlapping requirements.
  explicit PostSelectionPattern(std::vector<PhotonRequirement> required);

  const std::vector<PhotonRequirement>& required() const { return required_; }
  int total_required() const;
  bool matches(const Pattern& p) const;

 private:
  std::vector<PhotonRequirement> required_;
};

/// Keeps matching terms, no renormalisation.
FockState project(const FockState& state, const PostSelectionPattern& pattern);

struct PostSelection {
  FockState state;  // renormalised, empty when probability is 0
  double probability = 0.0;
};

PostSelection post_select(const FockState& state, const PostSelectionPattern& pattern);

}  // namespace qtele::optics

#endif  // QTELE_OPTICS_ELEMENT_HPP
