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


// End-to-end analyses behind the command-line tool.
//
// A report is a JSON document holding the configuration it was produced
// from, a digest of every input file read, the results, and the log of
// repairs applied to ingested matrices. It carries no timestamps, so equal
// configurations give byte-identical reports.

#ifndef QTELE_PIPELINE_PIPELINE_HPP
#define QTELE_PIPELINE_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtele/pipeline/matrix_io.hpp"
#include "qtele/stats.hpp"

namespace qtele::pipeline {

enum class PipelineName {
  teleport_sim,
  tomography,
  process,
  certify,
  mc_errors,
  mub_study,
  full_reproduction,
};

std::string to_string(PipelineName name);
/// Throws ParseError for an unknown name.
PipelineName parse_pipeline_name(std::string_view name);

std::string to_string(ProcessEstimator e);
/// "physical" or "tp_linear"; throws ParseError otherwise.
ProcessEstimator parse_process_estimator(std::string_view name);

struct PipelineConfig {
  PipelineName name = PipelineName::full_reproduction;
  std::uint64_t seed = 20200101;
  std::optional<int> trials;  // pipeline default when absent
  double visibility = 1.0;
  double exposure = 150.0;  // expected count of a setting with unit probability
  int rate = 150;           // design-study counting rate
  bool per_setting = false;
  ProcessEstimator estimator = ProcessEstimator::physical;  // design study only
  int grid_n1 = 20;
  int grid_n2 = 20;
  bool closed_interval = false;
  double repair_cap = kRepairCap;
  std::string fixtures;  // empty: compiled-in fixture directory
  std::string input;     // optional matrix JSON or counts CSV
  std::string out;       // output directory; empty: nothing written
  bool check = false;
  int threads = 1;

  std::string to_json() const;
  /// Missing keys keep their defaults; throws ParseError on bad values.
  static PipelineConfig from_json(const std::string& text);
};

enum class ExitCode : int {
  ok = 0,
  failure = 1,
  parse = 2,
  solver = 3,
  data_quality = 4,
  check_failed = 5,
};

/// Parse errors -> parse; solver and ill-posed fits -> solver; repairs over
/// the cap and empty data -> data_quality; anything else -> failure.
ExitCode exit_code_for(const std::exception& e);

/// Rows of (x, value, error) written as <name>.csv.
struct CsvSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> value;
  std::vector<double> error;

  std::string to_csv() const;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  PipelineConfig config;
  std::string inputs_digest;  // FNV-1a 64 over every input file, in read order
  std::string body;           // the full JSON document
  std::vector<Adjustment> adjustments;
  std::vector<CsvSeries> series;
  std::vector<CheckResult> checks;
  ExitCode exit_code = ExitCode::ok;
  std::string error;  // stage and message of the failure, if any
};

/// Runs one pipeline. Library errors are caught, recorded in the report and
/// mapped to an exit code; the report is complete in either case.
Report run_pipeline(const PipelineConfig& config);

/// Writes report.json and every series into config.out (created if needed).
void write_report(const Report& report);

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

/// 64-bit FNV-1a; pass the previous result as `state` to chain inputs.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t state = kFnvOffset);

}  // namespace qtele::pipeline

#endif  // QTELE_PIPELINE_PIPELINE_HPP
