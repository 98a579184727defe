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


// qtele: command-line front end to the analysis pipelines.
//
//   qtele full_reproduction --check
//   qtele certify --input state.json
//   qtele mc_errors --trials 500 --seed 7 --out results/

#include <cstdio>
#include <iostream>
#include <regex>
#include <string>

#include "CLI11.hpp"
#include "qtele/errors.hpp"
#include "qtele/pipeline/pipeline.hpp"

namespace {

using qtele::pipeline::ExitCode;
using qtele::pipeline::PipelineConfig;

void parse_grid(const std::string& text, PipelineConfig& cfg) {
  static const std::regex re(R"((\d+)x(\d+))");
  std::smatch m;
  if (!std::regex_match(text, m, re)) {
    throw qtele::ParseError("--grid expects N1xN2, got '" + text + "'");
  }
  cfg.grid_n1 = std::stoi(m[1]);
  cfg.grid_n2 = std::stoi(m[2]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qutrit teleportation analysis pipelines"};
  app.set_version_flag("--version", "qtele 0.3.0");

  std::string pipeline;
  std::string config_file;
  std::string grid;
  std::string estimator;
  int trials = 0;
  PipelineConfig cli;

  app.add_option("pipeline", pipeline,
                 "teleport_sim | tomography | process | certify | mc_errors | mub_study | "
                 "full_reproduction");
  app.add_option("--config", config_file, "Start from a configuration JSON (e.g. a report's \"config\")");
  app.add_option("--seed", cli.seed, "Master seed");
  app.add_option("--trials", trials, "Monte Carlo trials")->check(CLI::Range(2, 1000000));
  app.add_option("--visibility", cli.visibility, "HOM visibility shared by all photon pairs")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--exposure", cli.exposure, "Expected count of a measurement setting with unit probability");
  app.add_option("--rate", cli.rate, "Counting rate of the MUB design study");
  app.add_flag("--per-setting", cli.per_setting, "Apply the rate per projector, not per state");
  app.add_option("--estimator", estimator, "Design-study process fit: physical | tp_linear");
  app.add_option("--grid", grid, "Phase grid for batch certification, e.g. 20x20");
  app.add_flag("--closed-interval", cli.closed_interval, "Phases over [0, pi] instead of [0, pi)");
  app.add_option("--fixtures", cli.fixtures, "Fixture directory");
  app.add_option("--input", cli.input, "Matrix JSON or counts CSV to analyse");
  app.add_option("--out", cli.out, "Directory for report.json and CSV series");
  app.add_flag("--check", cli.check, "Gate results against the reported values (exit 5 on failure)");
  app.add_option("--threads", cli.threads, "Worker threads for Monte Carlo trials")
      ->check(CLI::Range(1, 256));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::parse);
  }

  PipelineConfig cfg;
  try {
    if (!config_file.empty()) {
      cfg = PipelineConfig::from_json(qtele::pipeline::read_text_file(config_file));
    }
    // Command-line flags override the file.
    auto given = [&](const char* name) { return app.count(name) > 0; };
    if (!pipeline.empty()) cfg.name = qtele::pipeline::parse_pipeline_name(pipeline);
    else if (config_file.empty()) throw qtele::ParseError("no pipeline given");
    if (given("--seed")) cfg.seed = cli.seed;
    if (given("--trials")) cfg.trials = trials;
    if (given("--visibility")) cfg.visibility = cli.visibility;
    if (given("--exposure")) cfg.exposure = cli.exposure;
    if (given("--rate")) cfg.rate = cli.rate;
    if (given("--per-setting")) cfg.per_setting = true;
    if (given("--estimator")) cfg.estimator = qtele::pipeline::parse_process_estimator(estimator);
    if (given("--grid")) parse_grid(grid, cfg);
    if (given("--closed-interval")) cfg.closed_interval = true;
    if (given("--fixtures")) cfg.fixtures = cli.fixtures;
    if (given("--input")) cfg.input = cli.input;
    if (given("--out")) cfg.out = cli.out;
    if (given("--check")) cfg.check = true;
    if (given("--threads")) cfg.threads = cli.threads;
  } catch (const qtele::Error& e) {
    std::cerr << "qtele: " << e.what() << "\n";
    return static_cast<int>(ExitCode::parse);
  }

  const auto report = qtele::pipeline::run_pipeline(cfg);
  if (cfg.out.empty()) {
    std::cout << report.body;
  } else {
    try {
      qtele::pipeline::write_report(report);
    } catch (const qtele::Error& e) {
      std::cerr << "qtele: " << e.what() << "\n";
      return static_cast<int>(ExitCode::failure);
    }
    std::cout << "report written to " << cfg.out << "/report.json\n";
  }
  for (const auto& c : report.checks) {
    std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  if (!report.error.empty()) std::cerr << "qtele: " << report.error << "\n";
  return static_cast<int>(report.exit_code);
}
