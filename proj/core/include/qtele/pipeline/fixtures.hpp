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


// Bundled data: the printed density matrices and process matrix, and the
// reported point values they are compared against.

#ifndef QTELE_PIPELINE_FIXTURES_HPP
#define QTELE_PIPELINE_FIXTURES_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qtele/pipeline/matrix_io.hpp"

namespace qtele::pipeline {

/// Compiled-in location of data/fixtures.
std::string default_fixture_dir();

struct ReportedValues {
  std::vector<double> state_fidelities;   // as listed, eleven values
  std::vector<int> state_fidelity_positions;  // 1-based list position of rho_1 .. rho_10
  std::array<double, 12> mub_fidelities{};
  double mub_mean = 0.0;
  double process_fidelity = 0.0;
  double process_fidelity_error = 0.0;
  int batch_n_genuine = 0;
  double batch_mean_mu = 0.0;
  double batch_mu_error = 0.0;
  double mc_mean_mub = 0.0;
  double mc_mean_nonmub = 0.0;
  std::array<std::int64_t, 2> success_probability_rebalanced{};
  std::array<std::int64_t, 2> success_probability_single_basis{};

  /// Listed fidelity for rho_i, i in 1..10.
  double state_fidelity(int i) const;
};

class FixtureSet {
 public:
  explicit FixtureSet(std::string dir = default_fixture_dir());

  const std::string& dir() const { return dir_; }
  std::string path(const std::string& file) const;

  /// rho_i for i in 1..10, repaired and logged.
  IngestedState printed_state(int i, double cap = kRepairCap) const;
  IngestedProcess printed_chi(double cap = kRepairCap) const;
  ReportedValues reported() const;

 private:
  std::string dir_;
};

ReportedValues parse_reported_values(const std::string& text, const std::string& origin);

}  // namespace qtele::pipeline

#endif  // QTELE_PIPELINE_FIXTURES_HPP
