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

#include "qtele/optics/hdbsm.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qtele/errors.hpp"

namespace qtele::optics {
namespace {

constexpr std::array<Arm, 4> kBsmArms = {Arm::a, Arm::b, Arm::c, Arm::d};

PhotonRequirement one_in(Arm arm, std::optional<int> rail = std::nullopt,
                         std::optional<Pol> pol = std::nullopt) {
  return PhotonRequirement{arm, rail, pol, 1};
}

// Single-photon creation superposition over the tags of one internal state.
std::vector<std::pair<int, double>> tag_weights(const Eigen::MatrixXd& w, Source s) {
  std::vector<std::pair<int, double>> out;
  const auto row = static_cast<Eigen::Index>(s);
  for (Eigen::Index t = 0; t < w.cols(); ++t) {
    if (w(row, t) != 0.0) out.emplace_back(static_cast<int>(t), w(row, t));
  }
  return out;
}

}  // namespace

std::string to_string(Stage s) {
  switch (s) {
    case Stage::PBS1: return "PBS1";
    case Stage::BD1_BD3: return "BD1_BD3";
    case Stage::HWPS: return "HWPS";
    case Stage::BD2_BD4: return "BD2_BD4";
    case Stage::AUX_PBS: return "AUX_PBS";
    case Stage::HWP1_4: return "HWP1_4";
    case Stage::PROJ: return "PROJ";
  }
  return "?";
}

Stage parse_stage(std::string_view name) {
  for (Stage s : kAllStages) {
    if (to_string(s) == name) return s;
  }
  throw ParseError("unknown circuit stage '" + std::string(name) + "'");
}

std::vector<CircuitStage> build_hdbsm_circuit(int dim) {
  if (dim != 3) {
    throw OutOfScopeError("build_hdbsm_circuit: only the qutrit circuit is constructed");
  }
  const std::vector<Arm> ab = {Arm::a, Arm::b};
  std::vector<CircuitStage> c;

  c.push_back({Stage::PBS1,
               {OpticalElement::pbs(Arm::a, Arm::b)},
               PostSelectionPattern({one_in(Arm::a), one_in(Arm::b)})});

  // BD1/BD3 shift V down one rail; the outputs of rails 1 and 2 are swapped on
  // the way to the next displacer and rail 0 picks up a 45 degree plate.
  c.push_back({Stage::BD1_BD3,
               {OpticalElement::beam_displacer(ab), OpticalElement::route(ab, {{1, 2}, {2, 1}}),
                OpticalElement::hwp(45.0, ab, 0)},
               std::nullopt});

  c.push_back({Stage::HWPS, {OpticalElement::hwp(22.5, ab, 0)}, std::nullopt});

  c.push_back({Stage::BD2_BD4,
               {OpticalElement::hwp(45.0, ab, 1), OpticalElement::beam_displacer(ab)},
               PostSelectionPattern({one_in(Arm::a, 0), one_in(Arm::b, 0)})});

  c.push_back({Stage::AUX_PBS,
               {OpticalElement::pbs(Arm::a, Arm::c), OpticalElement::pbs(Arm::b, Arm::d)},
               PostSelectionPattern(
                   {one_in(Arm::a), one_in(Arm::b), one_in(Arm::c), one_in(Arm::d)})});

  c.push_back({Stage::HWP1_4,
               {OpticalElement::hwp(22.5, {Arm::a, Arm::b, Arm::c, Arm::d})},
               std::nullopt});

  c.push_back({Stage::PROJ,
               {},
               PostSelectionPattern({one_in(Arm::a), one_in(Arm::b), one_in(Arm::c),
                                     one_in(Arm::d), one_in(Arm::photon3),
                                     one_in(Arm::trigger)})});
  return c;
}

std::vector<ProjectionOutcome> hdbsm_projection_outcomes() {
  std::vector<ProjectionOutcome> out;
  out.reserve(16);
  for (int bits = 0; bits < 16; ++bits) {
    ProjectionOutcome o;
    std::vector<PhotonRequirement> req;
    int n_v = 0;
    for (int k = 0; k < 4; ++k) {
      const Pol p = ((bits >> (3 - k)) & 1) ? Pol::V : Pol::H;
      if (p == Pol::V) ++n_v;
      o.pols[static_cast<std::size_t>(k)] = p;
      req.push_back(one_in(kBsmArms[static_cast<std::size_t>(k)], std::nullopt, p));
    }
    req.push_back(one_in(Arm::photon3));
    req.push_back(one_in(Arm::trigger));
    o.pattern = PostSelectionPattern(std::move(req));
    if (n_v % 2 == 1) {
      o.feed_forward.push_back(OpticalElement::phase_shift(kPi, Arm::photon3, 2, Pol::H));
    }
    out.push_back(std::move(o));
  }
  return out;
}

FockState prepare_input_state(const QuditState& input, const ChannelSpec& channel,
                              const VisibilityModel& visibility) {
  if (input.dim() != 3 || channel.dim() != 3) {
    throw OutOfScopeError("prepare_input_state: the optical scheme is qutrit only");
  }
  const Eigen::MatrixXd w = visibility.internal_states();
  const auto w1 = tag_weights(w, Source::s1t);
  const auto w23 = tag_weights(w, Source::s23);
  const auto w45 = tag_weights(w, Source::s45);

  std::vector<CreationTerm> photon1;
  for (int k = 0; k < 3; ++k) {
    if (input[k] == Complex{}) continue;
    for (const auto& [t, c] : w1) photon1.push_back({{encode_level(Arm::a, k, t)}, input[k] * c});
  }

  std::vector<CreationTerm> pair23;
  const auto& s = channel.schmidt_coefficients();
  for (int k = 0; k < 3; ++k) {
    if (s[static_cast<std::size_t>(k)] == 0.0) continue;
    for (const auto& [t, c] : w23) {
      pair23.push_back({{encode_level(Arm::b, k, t), encode_level(Arm::photon3, k)},
                        s[static_cast<std::size_t>(k)] * c});
    }
  }

  std::vector<CreationTerm> pair45;
  for (Pol p : {Pol::H, Pol::V}) {
    for (const auto& [t, c] : w45) {
      for (const auto& [u, e] : w45) {
        pair45.push_back({{OpticalMode{Arm::c, 0, p, t}, OpticalMode{Arm::d, 0, p, u}},
                          c * e / std::sqrt(2.0)});
      }
    }
  }

  const std::vector<CreationTerm> trigger = {{{OpticalMode{Arm::trigger, 0, Pol::H, 0}}, 1.0}};

  std::set<Arm> universe = {Arm::a, Arm::b, Arm::c, Arm::d, Arm::photon3, Arm::trigger};
  return FockState::vacuum(std::move(universe))
      .create(photon1)
      .create(pair23)
      .create(pair45)
      .create(trigger);
}

FockState run_stages(const FockState& state, const std::vector<CircuitStage>& circuit,
                     Stage first, Stage last) {
  FockState cur = state;
  for (const auto& st : circuit) {
    if (st.stage < first || st.stage > last) continue;
    for (const auto& e : st.elements) cur = apply_element(cur, e);
    if (st.selection) cur = project(cur, *st.selection);
  }
  return cur;
}

CMatrix photon3_operator(const FockState& state) {
  // Environment key: every other photon plus photon 3's internal tag.
  std::map<std::pair<Pattern, int>, CVector> groups;
  for (const auto& [pattern, amp] : state.terms()) {
    Pattern env;
    int level = -1;
    int tag = 0;
    int n3 = 0;
    for (const auto& m : pattern) {
      if (m.arm == Arm::photon3) {
        ++n3;
        level = decode_level(m);
        tag = m.tag;
      } else {
        env.push_back(m);
      }
    }
    if (n3 != 1 || level < 0) {
      throw InvariantError("photon3_operator: term without a single encoded photon 3");
    }
    auto [it, inserted] = groups.try_emplace({std::move(env), tag}, CVector::Zero(3));
    it->second(level) += amp;
  }
  CMatrix rho = CMatrix::Zero(3, 3);
  for (const auto& [key, v] : groups) rho += v * v.adjoint();
  return rho;
}

TeleportRun run_teleportation(const QuditState& input, const ChannelSpec& channel,
                              const VisibilityModel& visibility, std::optional<Stage> stage,
                              const TeleportOptions& options) {
  if (!(options.white_noise >= 0.0 && options.white_noise <= 1.0)) {
    throw InvariantError("run_teleportation: white-noise weight must lie in [0, 1]");
  }
  const auto circuit = build_hdbsm_circuit(3);
  const FockState initial = prepare_input_state(input, channel, visibility);
  const FockState selected = run_stages(initial, circuit, Stage::PBS1, Stage::PROJ);

  TeleportRun run;
  if (stage) run.stage_state = run_stages(initial, circuit, Stage::PBS1, *stage);

  CMatrix acc = CMatrix::Zero(3, 3);
  const auto outcomes = hdbsm_projection_outcomes();
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    FockState s = project(selected, outcomes[k].pattern);
    for (const auto& e : outcomes[k].feed_forward) s = apply_element(s, e);
    run.outcome_probabilities[k] = s.norm2();
    if (!s.empty()) acc += photon3_operator(s);
  }
  run.success_probability = acc.trace().real();
  if (!(run.success_probability > 0.0)) {
    throw DegenerateOutcomeError("run_teleportation: no accepted six-fold coincidence");
  }
  CMatrix rho = hermitian_part(acc) / run.success_probability;
  if (options.white_noise > 0.0) {
    rho = (1.0 - options.white_noise) * rho +
          options.white_noise * CMatrix::Identity(3, 3) / 3.0;
  }
  run.rho = DensityMatrix::from_matrix(rho);
  return run;
}

}  // namespace qtele::optics
