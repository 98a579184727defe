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

// Partial distinguishability. Every source emits photons in an internal state
// w_s; two photons from sources s, t interfere with HOM visibility
// V_st = |<w_s|w_t>|^2. The internal states are realised as superpositions
// over tag values, so the Fock simulation handles them exactly.

#ifndef QTELE_OPTICS_VISIBILITY_HPP
#define QTELE_OPTICS_VISIBILITY_HPP

#include <array>
#include <utility>

#include "qtele/types.hpp"

namespace qtele::optics {

enum class Source { s1t = 0, s23 = 1, s45 = 2 };

struct VisibilityModel {
  double v_1t_23 = 1.0;  // photon 1 against photon 2 at PBS1
  double v_1t_45 = 1.0;  // photon 1 against the auxiliary pair
  double v_23_45 = 1.0;  // photon 2 against the auxiliary pair

  static VisibilityModel shared(double v) { return {v, v, v}; }
  bool ideal() const { return v_1t_23 == 1.0 && v_1t_45 == 1.0 && v_23_45 == 1.0; }

  /// Throws InvariantError for values outside [0, 1].
  void validate() const;

  /// Gram matrix G_st = sqrt(V_st) of the three source internal states.
  Eigen::Matrix3d gram() const;

  /// Rows are the internal states w_s in an orthonormal tag basis, with
  /// W W^T = G. Throws InvariantError when G is not positive semidefinite
  /// (no set of internal states realises the requested visibilities).
  Eigen::MatrixXd internal_states() const;
};

/// Factor multiplying the coherence rho_ij of the teleported state relative to
/// the ideal output. (0,1) needs photons 1 and 2 to interfere; (0,2) and (1,2)
/// additionally pass the auxiliary-pair interference.
double visibility_damping_factor(const VisibilityModel& model, std::pair<int, int> coherence);

}  // namespace qtele::optics

#endif  // QTELE_OPTICS_VISIBILITY_HPP
