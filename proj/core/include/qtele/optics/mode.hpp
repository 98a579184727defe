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

#ifndef QTELE_OPTICS_MODE_HPP
#define QTELE_OPTICS_MODE_HPP

#include <compare>
#include <cstdint>
#include <string>

namespace qtele::optics {

/// Spatial arm. a and b are the PBS1 output ports (photons 1 and 2 enter on
/// them), c and d carry the auxiliary pair.
enum class Arm : std::uint8_t { a, b, c, d, photon3, trigger };

enum class Pol : std::uint8_t { H, V };

inline constexpr int kArmCount = 6;

std::string to_string(Arm arm);
inline const char* to_string(Pol p) { return p == Pol::H ? "H" : "V"; }

/// One optical mode. The tag labels an internal (spectral) degree of freedom;
/// photons with different tags never interfere.
struct OpticalMode {
  Arm arm = Arm::a;
  int rail = 0;
  Pol pol = Pol::H;
  int tag = 0;

  friend auto operator<=>(const OpticalMode&, const OpticalMode&) = default;
  std::string str() const;
};

/// Path-polarisation encoding of a qutrit level: 0 -> H on rail 0,
/// 1 -> V on rail 1, 2 -> H on rail 2.
OpticalMode encode_level(Arm arm, int level, int tag = 0);

/// Inverse of encode_level; returns -1 for a mode outside the encoding.
int decode_level(const OpticalMode& mode);

}  // namespace qtele::optics

#endif  // QTELE_OPTICS_MODE_HPP
