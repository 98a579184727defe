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


#ifndef QTELE_TESTS_SUPPORT_GOLDEN_HPP
#define QTELE_TESTS_SUPPORT_GOLDEN_HPP

#include "qtele/optics/hdbsm.hpp"

namespace qtele::testing {

// Hand-written Fock expansion of the rebalanced-channel circuit after `stage`
// for input alpha|0> + beta|1> + gamma|2>, unnormalised, with the auxiliary
// pair and trigger photon included. Valid for PBS1 through HWP1_4.
optics::FockState printed_stage_state(optics::Stage stage, const QuditState& input);

// max_k |a_k - e^{i phi} b_k| over the union of patterns, with phi chosen
// from the overlap <b|a>.
double gap_up_to_phase(const optics::FockState& a, const optics::FockState& b);

}  // namespace qtele::testing

#endif  // QTELE_TESTS_SUPPORT_GOLDEN_HPP
