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


#include "support/golden.hpp"

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "qtele/errors.hpp"

namespace qtele::testing {
namespace {

using optics::Arm;
using optics::FockState;
using optics::OpticalMode;
using optics::Pattern;
using optics::Pol;
using optics::Stage;

OpticalMode mode(Arm arm, Pol p, int rail) { return {arm, rail, p, 0}; }
OpticalMode p3(int level) { return optics::encode_level(Arm::photon3, level); }

struct Term {
  OpticalMode a;
  OpticalMode b;
  int level;
  Complex amp;
};

// Tensors (a, b, photon 3) terms with (HH + VV)/sqrt2 on c, d and H on the trigger.
FockState with_aux(const std::vector<Term>& terms) {
  std::vector<std::pair<Pattern, Complex>> out;
  const double r = 1.0 / std::sqrt(2.0);
  for (const auto& t : terms) {
    for (Pol p : {Pol::H, Pol::V}) {
      out.push_back({{t.a, t.b, mode(Arm::c, p, 0), mode(Arm::d, p, 0), p3(t.level),
                      mode(Arm::trigger, Pol::H, 0)},
                     t.amp * r});
    }
  }
  return FockState::from_terms({Arm::a, Arm::b, Arm::c, Arm::d, Arm::photon3, Arm::trigger}, 6,
                               out);
}

}  // namespace

FockState printed_stage_state(Stage stage, const QuditState& input) {
  const Complex al = input[0];
  const Complex be = input[1];
  const Complex ga = input[2];
  const double r2 = std::sqrt(2.0);
  const Pol H = Pol::H;
  const Pol V = Pol::V;
  const Arm a = Arm::a;
  const Arm b = Arm::b;

  switch (stage) {
    case Stage::PBS1:
      return with_aux({{mode(a, H, 0), mode(b, H, 0), 0, 2.0 / 3.0 * al},
                       {mode(a, H, 0), mode(b, H, 2), 2, 1.0 / 3.0 * al},
                       {mode(a, V, 1), mode(b, V, 1), 1, 2.0 / 3.0 * be},
                       {mode(a, H, 2), mode(b, H, 0), 0, 2.0 / 3.0 * ga},
                       {mode(a, H, 2), mode(b, H, 2), 2, 1.0 / 3.0 * ga}});
    case Stage::BD1_BD3:
      // Photon 3 is untouched by the displacers; its level is carried over.
      return with_aux({{mode(a, V, 0), mode(b, V, 0), 0, 2.0 / 3.0 * al},
                       {mode(a, V, 0), mode(b, H, 1), 2, 1.0 / 3.0 * al},
                       {mode(a, H, 0), mode(b, H, 0), 1, 2.0 / 3.0 * be},
                       {mode(a, H, 1), mode(b, V, 0), 0, 2.0 / 3.0 * ga},
                       {mode(a, H, 1), mode(b, H, 1), 2, 1.0 / 3.0 * ga}});
    case Stage::HWPS: {
      std::vector<Term> t;
      // (2/3) alpha |H0 - V0>_a |H0 - V0>_b / 2 and (2/3) beta |H0 + V0>_a |H0 + V0>_b / 2
      for (Pol pa : {H, V}) {
        for (Pol pb : {H, V}) {
          const double sa = pa == V ? -1.0 : 1.0;
          const double sb = pb == V ? -1.0 : 1.0;
          t.push_back({mode(a, pa, 0), mode(b, pb, 0), 0, al / 3.0 * sa * sb});
          t.push_back({mode(a, pa, 0), mode(b, pb, 0), 1, be / 3.0});
        }
        const double sa = pa == V ? -1.0 : 1.0;
        t.push_back({mode(a, pa, 0), mode(b, H, 1), 2, al / (3.0 * r2) * sa});
      }
      t.push_back({mode(a, H, 1), mode(b, H, 0), 0, 2.0 / 3.0 * ga / r2});
      t.push_back({mode(a, H, 1), mode(b, V, 0), 0, -2.0 / 3.0 * ga / r2});
      t.push_back({mode(a, H, 1), mode(b, H, 1), 2, ga / 3.0});
      return with_aux(t);
    }
    case Stage::BD2_BD4:
      return with_aux({{mode(a, H, 0), mode(b, H, 0), 0, al / 3.0},
                       {mode(a, H, 0), mode(b, V, 0), 2, r2 / 6.0 * al},
                       {mode(a, H, 0), mode(b, H, 0), 1, be / 3.0},
                       {mode(a, V, 0), mode(b, H, 0), 0, r2 / 3.0 * ga},
                       {mode(a, V, 0), mode(b, V, 0), 2, ga / 3.0}});
    case Stage::AUX_PBS:
    case Stage::HWP1_4: {
      std::vector<std::pair<Pattern, Complex>> out;
      const Complex k = r2 / 6.0;
      const Arm arms[4] = {Arm::a, Arm::b, Arm::c, Arm::d};
      auto pattern = [&](const Pol (&pols)[4], int level) {
        Pattern p;
        for (int i = 0; i < 4; ++i) p.push_back(mode(arms[i], pols[i], 0));
        p.push_back(p3(level));
        p.push_back(mode(Arm::trigger, H, 0));
        return p;
      };
      if (stage == Stage::AUX_PBS) {
        out.push_back({pattern({H, H, H, H}, 0), k * al});
        out.push_back({pattern({H, H, H, H}, 1), k * be});
        out.push_back({pattern({V, V, V, V}, 2), k * ga});
      } else {
        // Every pattern carries 1/4; odd V parity flips the sign of gamma.
        for (int bits = 0; bits < 16; ++bits) {
          Pol pols[4];
          int nv = 0;
          for (int i = 0; i < 4; ++i) {
            pols[i] = (bits >> (3 - i)) & 1 ? V : H;
            nv += pols[i] == V;
          }
          const double s = nv % 2 ? -1.0 : 1.0;
          out.push_back({pattern(pols, 0), 0.25 * k * al});
          out.push_back({pattern(pols, 1), 0.25 * k * be});
          out.push_back({pattern(pols, 2), 0.25 * k * ga * s});
        }
      }
      return FockState::from_terms({Arm::a, Arm::b, Arm::c, Arm::d, Arm::photon3, Arm::trigger},
                                   6, out);
    }
    case Stage::PROJ:
      break;
  }
  throw InvariantError("printed_stage_state: no printed expression for this stage");
}

double gap_up_to_phase(const FockState& a, const FockState& b) {
  Complex ov{0.0, 0.0};
  for (const auto& [p, amp] : b.terms()) ov += std::conj(amp) * a.amplitude(p);
  const Complex phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : Complex{1.0, 0.0};
  double gap = 0.0;
  for (const auto& [p, amp] : a.terms()) gap = std::max(gap, std::abs(amp - phase * b.amplitude(p)));
  for (const auto& [p, amp] : b.terms()) gap = std::max(gap, std::abs(a.amplitude(p) - phase * amp));
  return gap;
}

}  // namespace qtele::testing
