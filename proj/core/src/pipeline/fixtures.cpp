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


#include "qtele/pipeline/fixtures.hpp"

#include <nlohmann/json.hpp>

#include "qtele/errors.hpp"

#ifndef QTELE_DEFAULT_FIXTURE_DIR
#define QTELE_DEFAULT_FIXTURE_DIR "data/fixtures"
#endif

namespace qtele::pipeline {
namespace {

using nlohmann::json;

template <typename T>
T field(const json& j, const char* key, const std::string& origin) {
  if (!j.contains(key)) throw ParseError(origin + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(origin + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

std::string default_fixture_dir() { return QTELE_DEFAULT_FIXTURE_DIR; }

double ReportedValues::state_fidelity(int i) const {
  if (i < 1 || i > static_cast<int>(state_fidelity_positions.size())) {
    throw InvariantError("state_fidelity: index out of range");
  }
  const int pos = state_fidelity_positions[static_cast<std::size_t>(i - 1)];
  if (pos < 1 || pos > static_cast<int>(state_fidelities.size())) {
    throw InvariantError("state_fidelity: position out of range");
  }
  return state_fidelities[static_cast<std::size_t>(pos - 1)];
}

ReportedValues parse_reported_values(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": invalid JSON (" + e.what() + ")");
  }
  ReportedValues r;
  r.state_fidelities = field<std::vector<double>>(j, "state_fidelities", origin);
  r.state_fidelity_positions = field<std::vector<int>>(j, "state_fidelity_positions", origin);
  const auto mub = field<std::vector<double>>(j, "mub_fidelities", origin);
  if (mub.size() != 12) throw ParseError(origin + ": field 'mub_fidelities' needs 12 values");
  std::copy(mub.begin(), mub.end(), r.mub_fidelities.begin());
  r.mub_mean = field<double>(j, "mub_mean", origin);
  r.process_fidelity = field<double>(j, "process_fidelity", origin);
  r.process_fidelity_error = field<double>(j, "process_fidelity_error", origin);
  r.batch_n_genuine = field<int>(j, "batch_n_genuine", origin);
  r.batch_mean_mu = field<double>(j, "batch_mean_mu", origin);
  r.batch_mu_error = field<double>(j, "batch_mu_error", origin);
  r.mc_mean_mub = field<double>(j, "mc_mean_mub", origin);
  r.mc_mean_nonmub = field<double>(j, "mc_mean_nonmub", origin);
  r.success_probability_rebalanced =
      field<std::array<std::int64_t, 2>>(j, "success_probability_rebalanced", origin);
  r.success_probability_single_basis =
      field<std::array<std::int64_t, 2>>(j, "success_probability_single_basis", origin);
  return r;
}

FixtureSet::FixtureSet(std::string dir) : dir_(std::move(dir)) {}

std::string FixtureSet::path(const std::string& file) const { return dir_ + "/" + file; }

IngestedState FixtureSet::printed_state(int i, double cap) const {
  if (i < 1 || i > 10) throw InvariantError("printed_state: index must lie in 1..10");
  return ingest_density_matrix(path("rho" + std::to_string(i) + ".json"), cap);
}

IngestedProcess FixtureSet::printed_chi(double cap) const {
  return ingest_process_matrix(path("chi_printed.json"), cap);
}

ReportedValues FixtureSet::reported() const {
  const std::string p = path("reported_values.json");
  return parse_reported_values(read_text_file(p), p);
}

}  // namespace qtele::pipeline
