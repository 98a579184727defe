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

// The post-selected qutrit Bell-state measurement and the full six-photon
// teleportation run built on it.

#ifndef QTELE_OPTICS_HDBSM_HPP
#define QTELE_OPTICS_HDBSM_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtele/optics/element.hpp"
#include "qtele/optics/visibility.hpp"
#include "qtele/teleport.hpp"

namespace qtele::optics {

enum class Stage { PBS1, BD1_BD3, HWPS, BD2_BD4, AUX_PBS, HWP1_4, PROJ };

inline constexpr std::array<Stage, 7> kAllStages = {Stage::PBS1,    Stage::BD1_BD3, Stage::HWPS,
                                                    Stage::BD2_BD4, Stage::AUX_PBS, Stage::HWP1_4,
                                                    Stage::PROJ};

std::string to_string(Stage s);
/// Throws ParseError for an unknown name.
Stage parse_stage(std::string_view name);

struct CircuitStage {
  Stage stage = Stage::PBS1;
  std::vector<OpticalElement> elements;
  std::optional<PostSelectionPattern> selection;
};

/// One accepted H/V click pattern on arms a, b, c, d, with its feed-forward.
struct ProjectionOutcome {
  std::array<Pol, 4> pols{};
  PostSelectionPattern pattern{{}};
  std::vector<OpticalElement> feed_forward;
};

/// Stages PBS1 .. HWP1_4 followed by PROJ. The PROJ stage carries the
/// six-fold coincidence requirement; its 16 outcomes come from
/// hdbsm_projection_outcomes(). Throws OutOfScopeError for dim != 3.
std::vector<CircuitStage> build_hdbsm_circuit(int dim);

/// Sixteen H/V patterns on a, b, c, d. Odd numbers of V clicks flip the sign
/// of level 2, undone on photon 3 by a pi phase on rail 2.
std::vector<ProjectionOutcome> hdbsm_projection_outcomes();

/// Six-photon input: photon 1 (arm a) in `input`, photons 2 (arm b) and 3
/// sharing `channel`, the auxiliary pair (|HH> + |VV>)/sqrt2 on c, d, and the
/// trigger. Photons 1, 2, 4, 5 carry the internal states of `visibility`.
FockState prepare_input_state(const QuditState& input, const ChannelSpec& channel,
                              const VisibilityModel& visibility = {});

/// Applies stages [first, last] in order without renormalising.
FockState run_stages(const FockState& state, const std::vector<CircuitStage>& circuit,
                     Stage first, Stage last);

struct TeleportOptions {
  double white_noise = 0.0;  // admixture w of I/3 on the output
};

struct TeleportRun {
  DensityMatrix rho = DensityMatrix::maximally_mixed(3);
  double success_probability = 0.0;
  std::array<double, 16> outcome_probabilities{};
  std::optional<FockState> stage_state;  // unnormalised state after the requested stage
};

/// Photon-3 density matrix after the HDBSM and feed-forward, summed over the
/// accepted outcomes and traced over everything else.
TeleportRun run_teleportation(const QuditState& input, const ChannelSpec& channel,
                              const VisibilityModel& visibility = {},
                              std::optional<Stage> stage = std::nullopt,
                              const TeleportOptions& options = {});

/// Unnormalised photon-3 operator from a post-selected state: groups terms by
/// the configuration of all other photons and sums the outer products.
CMatrix photon3_operator(const FockState& state);

}  // namespace qtele::optics

#endif  // QTELE_OPTICS_HDBSM_HPP
