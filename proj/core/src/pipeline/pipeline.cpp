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


#include "qtele/pipeline/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "detail/rng.hpp"
#include "qtele/algebra.hpp"
#include "qtele/certification.hpp"
#include "qtele/errors.hpp"
#include "qtele/optics/hdbsm.hpp"
#include "qtele/pipeline/fixtures.hpp"
#include "qtele/process.hpp"
#include "qtele/stats.hpp"
#include "qtele/teleport.hpp"
#include "qtele/tomography.hpp"

namespace qtele::pipeline {
namespace {

using json = nlohmann::ordered_json;

constexpr std::array<PipelineName, 7> kAllPipelines = {
    PipelineName::teleport_sim, PipelineName::tomography, PipelineName::process,
    PipelineName::certify,      PipelineName::mc_errors,  PipelineName::mub_study,
    PipelineName::full_reproduction};

// Tolerances of the --check gate.
constexpr double kStateFidelityTol = 0.02;
constexpr double kProcessFidelityTol = 0.02;
constexpr double kChiEntryTol = 0.02;
constexpr double kMubTol = 0.01;
constexpr double kMubMeanTol = 0.005;
constexpr int kGenuineCountTol = 15;

// rho_4's printed fidelity disagrees with its printed matrix; it is reported
// but not gated.
constexpr int kDocumentedDeviation = 4;

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"entries", std::move(rows)}};
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

class Context {
 public:
  Context(const PipelineConfig& cfg, Report& report)
      : cfg_(cfg),
        report_(report),
        fixtures_(cfg.fixtures.empty() ? default_fixture_dir() : cfg.fixtures) {}

  const PipelineConfig& cfg() const { return cfg_; }
  json& results() { return results_; }
  json& inputs() { return inputs_; }
  std::uint64_t digest() const { return digest_; }

  std::string read(const std::string& path) {
    std::string text = read_text_file(path);
    digest_ = fnv1a64(text, digest_);
    inputs_.push_back(path);
    return text;
  }

  CMatrix matrix(const std::string& path) { return parse_matrix_json(read(path), path); }

  DensityMatrix state(const std::string& path) { return repaired_state(matrix(path), path); }
  ProcessMatrix process(const std::string& path) { return repaired_process(matrix(path), path); }

  DensityMatrix repaired_state(const CMatrix& m, const std::string& source) {
    auto s = repair_density_matrix(m, source, cfg_.repair_cap);
    log(s.adjustments);
    return s.rho;
  }

  ProcessMatrix repaired_process(const CMatrix& m, const std::string& source) {
    auto p = repair_process_matrix(m, source, cfg_.repair_cap);
    log(p.adjustments);
    return p.chi;
  }

  DensityMatrix printed_state(int i) {
    return state(fixtures_.path("rho" + std::to_string(i) + ".json"));
  }
  ProcessMatrix printed_chi() { return process(fixtures_.path("chi_printed.json")); }
  CMatrix printed_chi_raw() { return matrix(fixtures_.path("chi_printed.json")); }

  const ReportedValues& reported() {
    if (!reported_) {
      const std::string p = fixtures_.path("reported_values.json");
      reported_ = parse_reported_values(read(p), p);
    }
    return *reported_;
  }

  PhaseGrid grid() const { return {cfg_.grid_n1, cfg_.grid_n2, cfg_.closed_interval}; }

  void series(CsvSeries s) { report_.series.push_back(std::move(s)); }

  void check(std::string name, bool passed, std::string detail) {
    report_.checks.push_back({std::move(name), passed, std::move(detail)});
  }

 private:
  void log(const std::vector<Adjustment>& a) {
    report_.adjustments.insert(report_.adjustments.end(), a.begin(), a.end());
  }

  const PipelineConfig& cfg_;
  Report& report_;
  FixtureSet fixtures_;
  json results_ = json::object();
  json inputs_ = json::array();
  std::uint64_t digest_ = kFnvOffset;
  std::optional<ReportedValues> reported_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

json certification_json(const CertificationReport& r) {
  return json{{"verdict", to_string(r.verdict)},
              {"mu", r.mu},
              {"linear_criteria", r.linear_values},
              {"nonlinear_criterion", r.nonlinear_lhs},
              {"fidelity_witness", r.fidelity_witness}};
}

json batch_json(const BatchSummary& b, const PhaseGrid& g) {
  return json{{"grid", {{"n1", g.n1}, {"n2", g.n2}, {"closed_interval", g.closed_interval}}},
              {"n_genuine", b.n_genuine},
              {"n_simulable", b.n_simulable},
              {"mean_mu_genuine", b.mean_mu_genuine},
              {"std_mu_genuine", b.std_mu_genuine}};
}

CsvSeries indexed_series(std::string name, const std::vector<double>& v) {
  CsvSeries s{std::move(name), {}, {}, {}};
  for (std::size_t i = 0; i < v.size(); ++i) {
    s.x.push_back(static_cast<double>(i));
    s.value.push_back(v[i]);
    s.error.push_back(0.0);
  }
  return s;
}

// --- pipelines --------------------------------------------------------------

void teleport_sim(Context& ctx) {
  const auto inputs = paper_input_states();
  const auto channel = ChannelSpec::rebalanced_qutrit();
  const auto vis = optics::VisibilityModel::shared(ctx.cfg().visibility);
  json rows = json::array();
  double total = 0.0;
  CsvSeries s{"teleport_fidelity", {}, {}, {}};
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto run = optics::run_teleportation(inputs[i], channel, vis);
    const double f = fidelity(run.rho, inputs[i]);
    total += f;
    rows.push_back({{"state", i + 1}, {"fidelity", f}, {"success_probability", run.success_probability}});
    s.x.push_back(static_cast<double>(i + 1));
    s.value.push_back(f);
    s.error.push_back(0.0);
  }
  ctx.results()["teleport_sim"] = {
      {"visibility", ctx.cfg().visibility},
      {"states", std::move(rows)},
      {"mean_fidelity", total / static_cast<double>(inputs.size())},
      {"success_probability_rebalanced", success_probability(Scheme::nonmaximal_rebalanced).str()},
      {"success_probability_single_basis", success_probability(Scheme::maximal_single_basis).str()}};
  ctx.series(std::move(s));

  if (ctx.cfg().check) {
    bool all_one = true;
    for (const auto& r : ctx.results()["teleport_sim"]["states"]) {
      all_one = all_one && std::abs(r["fidelity"].get<double>() - 1.0) < 1e-9;
    }
    const auto& rep = ctx.reported();
    const Rational expect = Rational::make(rep.success_probability_rebalanced[0],
                                           rep.success_probability_rebalanced[1]);
    if (ctx.cfg().visibility == 1.0) {
      ctx.check("teleport_unit_fidelity", all_one, "ten simulated states at V = 1");
    }
    ctx.check("success_probability", success_probability(Scheme::nonmaximal_rebalanced) == expect,
              success_probability(Scheme::nonmaximal_rebalanced).str() + " vs " + expect.str());
  }
}

void tomography_from_counts(Context& ctx) {
  const std::string& path = ctx.cfg().input;
  const CountsTable counts =
      parse_counts_csv(ctx.read(path), ProjectorSet::canonical(), ctx.cfg().exposure, path);
  const StateEstimate lin = reconstruct_state(counts, StateMethod::linear);
  const StateEstimate mle = reconstruct_state(counts, StateMethod::mle);
  ctx.results()["tomography"] = {
      {"counts_total", counts.total()},
      {"linear", {{"physical", lin.physical}, {"matrix", matrix_json(lin.matrix)}}},
      {"mle",
       {{"log_likelihood", mle.log_likelihood},
        {"iterations", mle.iterations},
        {"matrix", matrix_json(mle.matrix)}}},
      {"certification", certification_json(certify(mle.density()))}};
}

void tomography(Context& ctx, bool simulate) {
  if (!ctx.cfg().input.empty()) {
    tomography_from_counts(ctx);
    return;
  }
  const auto inputs = paper_input_states();
  const auto& rep = ctx.reported();
  json printed = json::array();
  double sum = 0.0;
  bool gate = true;
  for (int i = 1; i <= 10; ++i) {
    const DensityMatrix rho = ctx.printed_state(i);
    const double f = fidelity(rho, inputs[static_cast<std::size_t>(i - 1)]);
    const double listed = rep.state_fidelity(i);
    const bool documented = i == kDocumentedDeviation;
    const bool within = std::abs(f - listed) <= kStateFidelityTol;
    if (!documented) gate = gate && within;
    sum += f;
    printed.push_back({{"state", i},
                       {"fidelity", f},
                       {"listed", listed},
                       {"within_tolerance", within},
                       {"documented_deviation", documented}});
  }
  json out = {{"printed_states", std::move(printed)}, {"printed_mean_fidelity", sum / 10.0}};

  if (simulate) {
    const auto channel = ChannelSpec::rebalanced_qutrit();
    const auto vis = optics::VisibilityModel::shared(ctx.cfg().visibility);
    json sim = json::array();
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const auto run = optics::run_teleportation(inputs[i], channel, vis);
      const auto counts = simulate_counts(run.rho, ProjectorSet::canonical(), ctx.cfg().exposure,
                                          detail::mix64(ctx.cfg().seed) + i);
      const auto est = reconstruct_state(counts, StateMethod::mle);
      sim.push_back({{"state", i + 1},
                     {"counts_total", counts.total()},
                     {"fidelity_true", fidelity(run.rho, inputs[i])},
                     {"fidelity_estimated", fidelity(est.matrix, inputs[i])}});
    }
    out["simulated"] = {{"exposure", ctx.cfg().exposure},
                        {"visibility", ctx.cfg().visibility},
                        {"states", std::move(sim)}};
  }
  ctx.results()["tomography"] = std::move(out);
  if (ctx.cfg().check) {
    ctx.check("printed_state_fidelities", gate,
              "rho_1..rho_10 within " + fmt(kStateFidelityTol) + " of the listed values, rho_4 exempt");
  }
}

void analyse_process(Context& ctx, const ProcessMatrix& chi, json& out) {
  const double f = process_fidelity(chi);
  const MubFidelities mub = mub_fidelities(chi);
  out["process_fidelity"] = f;
  out["average_fidelity_from_process"] = average_fidelity_from_process(f, 3);
  out["tp_residual"] = chi.tp_residual();
  out["mub_fidelities"] = mub.values;
  out["mub_mean"] = mub.mean;
  ctx.series(indexed_series("mub_fidelities", {mub.values.begin(), mub.values.end()}));
}

void process(Context& ctx) {
  if (!ctx.cfg().input.empty()) {
    json out;
    analyse_process(ctx, ctx.process(ctx.cfg().input), out);
    ctx.results()["process"] = std::move(out);
    return;
  }
  const auto inputs = paper_input_states();
  std::vector<InputOutputPair> pairs;
  for (int i = 1; i <= 9; ++i) pairs.push_back({inputs[static_cast<std::size_t>(i - 1)], ctx.printed_state(i)});
  const ProcessFit fit = reconstruct_process(pairs);
  const CMatrix printed_raw = ctx.printed_chi_raw();
  const ProcessMatrix printed = ctx.printed_chi();
  const double gap = (fit.chi.matrix() - printed_raw).cwiseAbs().maxCoeff();

  json rebuilt = {{"residual", fit.residual}, {"iterations", fit.iterations}, {"max_entry_gap_to_printed", gap}};
  analyse_process(ctx, fit.chi, rebuilt);
  rebuilt["chi"] = matrix_json(fit.chi.matrix());
  json from_printed;
  analyse_process(ctx, printed, from_printed);
  ctx.results()["process"] = {{"rebuilt", rebuilt}, {"printed", from_printed}};

  if (ctx.cfg().check) {
    const auto& rep = ctx.reported();
    const double fr = process_fidelity(fit.chi);
    ctx.check("process_fidelity", std::abs(fr - rep.process_fidelity) <= kProcessFidelityTol,
              fmt(fr) + " vs " + fmt(rep.process_fidelity));
    ctx.check("process_entrywise", gap <= kChiEntryTol, "max gap " + fmt(gap));
    const MubFidelities m = mub_fidelities(printed);
    double worst = 0.0;
    for (std::size_t k = 0; k < 12; ++k) worst = std::max(worst, std::abs(m.values[k] - rep.mub_fidelities[k]));
    ctx.check("mub_fidelities", worst <= kMubTol, "max deviation " + fmt(worst));
    ctx.check("mub_mean", std::abs(m.mean - rep.mub_mean) <= kMubMeanTol,
              fmt(m.mean) + " vs " + fmt(rep.mub_mean));
  }
}

void certify_stage(Context& ctx) {
  const PhaseGrid grid = ctx.grid();
  ProcessMatrix chi = ProcessMatrix::ideal();
  if (!ctx.cfg().input.empty()) {
    const CMatrix m = ctx.matrix(ctx.cfg().input);
    if (m.rows() == 3) {
      const DensityMatrix rho = ctx.repaired_state(m, ctx.cfg().input);
      ctx.results()["certify"] = {{"state", certification_json(certify(rho))}};
      return;
    }
    if (m.rows() != 9) throw ParseError(ctx.cfg().input + ": dim must be 3 (state) or 9 (process)");
    chi = ctx.repaired_process(m, ctx.cfg().input);
  } else {
    chi = ctx.printed_chi();
  }
  const BatchSummary b = batch_certification(chi, grid);
  ctx.results()["certify"] = {{"batch", batch_json(b, grid)}};
  ctx.series(indexed_series("batch_mu", b.mus));

  if (ctx.cfg().check && ctx.cfg().input.empty()) {
    const auto& rep = ctx.reported();
    ctx.check("batch_n_genuine", std::abs(b.n_genuine - rep.batch_n_genuine) <= kGenuineCountTol,
              std::to_string(b.n_genuine) + " vs " + std::to_string(rep.batch_n_genuine));
    ctx.check("batch_mean_mu", std::abs(b.mean_mu_genuine - rep.batch_mean_mu) <= rep.batch_mu_error,
              fmt(b.mean_mu_genuine) + " vs " + fmt(rep.batch_mean_mu));
  }
}

CsvSeries study_series(std::string name, const StudyResult& r) {
  CsvSeries s{std::move(name), {}, r.values, r.errors};
  for (int x : r.x_grid) s.x.push_back(x);
  return s;
}

json study_json(const StudyResult& r) {
  return json{{"x", r.x_grid}, {"values", r.values}, {"errors", r.errors},
              {"converged_error", r.converged_value}, {"failed_trials", r.n_failed}};
}

void mc_errors(Context& ctx) {
  const int trials = ctx.cfg().trials.value_or(500);
  const auto inputs = paper_input_states();
  std::vector<QuditState> nine(inputs.begin(), inputs.begin() + 9);
  std::vector<CountsTable> data;
  for (int i = 1; i <= 9; ++i) {
    data.push_back(expected_counts(ctx.printed_state(i).matrix(), ProjectorSet::canonical(),
                                   ctx.cfg().exposure));
  }
  ResampleOptions ro;
  ro.threads = ctx.cfg().threads;
  const ResampleEnsemble e =
      poisson_resample(data, trials, ctx.cfg().seed, process_fidelity_statistic(nine), ro);
  ctx.series(indexed_series("resample_process_fidelity", e.samples));

  const ProcessMatrix chi = ctx.printed_chi();
  const std::vector<int> xs = {1, 2, 4, 8, 16, 32, 64, 128};
  ConvergenceOptions co;
  co.exposure = ctx.cfg().exposure;
  co.threads = ctx.cfg().threads;
  const StudyResult fid =
      convergence_study(chi, ConvergenceStatistic::average_fidelity, xs, trials, ctx.cfg().seed, co);
  const StudyResult mu =
      convergence_study(chi, ConvergenceStatistic::mean_mu, xs, trials, ctx.cfg().seed, co);
  ctx.series(study_series("convergence_average_fidelity", fid));
  ctx.series(study_series("convergence_mean_mu", mu));

  ctx.results()["mc_errors"] = {
      {"trials", trials},
      {"exposure", ctx.cfg().exposure},
      {"process_fidelity", {{"mean", e.mean()}, {"std", e.stddev()}, {"failed_trials", e.n_failed()}}},
      {"convergence_average_fidelity", study_json(fid)},
      {"convergence_mean_mu", study_json(mu)}};
}

void mub_study(Context& ctx) {
  MubDesignOptions o;
  o.rate = ctx.cfg().rate;
  o.trials = ctx.cfg().trials.value_or(100);
  o.per_setting = ctx.cfg().per_setting;
  o.estimator = ctx.cfg().estimator;
  o.threads = ctx.cfg().threads;
  const MubDesignResult r = mub_design_study(ctx.cfg().seed, o);
  ctx.series(indexed_series("mub_design_mub", r.mub_samples));
  ctx.series(indexed_series("mub_design_nonmub", r.nonmub_samples));
  ctx.results()["mub_study"] = {{"rate", o.rate},
                                {"trials", o.trials},
                                {"per_setting", o.per_setting},
                                {"estimator", to_string(o.estimator)},
                                {"mean_mub", r.mean_mub},
                                {"err_mub", r.err_mub},
                                {"mean_nonmub", r.mean_nonmub},
                                {"err_nonmub", r.err_nonmub},
                                {"failed_trials", r.n_failed}};
}

void dispatch(Context& ctx, std::string& stage) {
  switch (ctx.cfg().name) {
    case PipelineName::teleport_sim: stage = "teleport_sim"; teleport_sim(ctx); return;
    case PipelineName::tomography: stage = "tomography"; tomography(ctx, true); return;
    case PipelineName::process: stage = "process"; process(ctx); return;
    case PipelineName::certify: stage = "certify"; certify_stage(ctx); return;
    case PipelineName::mc_errors: stage = "mc_errors"; mc_errors(ctx); return;
    case PipelineName::mub_study: stage = "mub_study"; mub_study(ctx); return;
    case PipelineName::full_reproduction:
      if (!ctx.cfg().input.empty()) {
        throw ParseError("full_reproduction reads the bundled fixtures and takes no --input");
      }
      stage = "teleport_sim";
      teleport_sim(ctx);
      stage = "tomography";
      tomography(ctx, false);
      stage = "process";
      process(ctx);
      stage = "certify";
      certify_stage(ctx);
      return;
  }
}

}  // namespace

std::string to_string(PipelineName name) {
  switch (name) {
    case PipelineName::teleport_sim: return "teleport_sim";
    case PipelineName::tomography: return "tomography";
    case PipelineName::process: return "process";
    case PipelineName::certify: return "certify";
    case PipelineName::mc_errors: return "mc_errors";
    case PipelineName::mub_study: return "mub_study";
    case PipelineName::full_reproduction: return "full_reproduction";
  }
  return "?";
}

PipelineName parse_pipeline_name(std::string_view name) {
  for (PipelineName p : kAllPipelines) {
    if (to_string(p) == name) return p;
  }
  throw ParseError("unknown pipeline '" + std::string(name) + "'");
}

std::string to_string(ProcessEstimator e) {
  return e == ProcessEstimator::physical ? "physical" : "tp_linear";
}

ProcessEstimator parse_process_estimator(std::string_view name) {
  if (name == "physical") return ProcessEstimator::physical;
  if (name == "tp_linear") return ProcessEstimator::tp_linear;
  throw ParseError("unknown process estimator '" + std::string(name) + "'");
}

ExitCode exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return ExitCode::parse;
  if (dynamic_cast<const SolverError*>(&e) || dynamic_cast<const IllPosedError*>(&e)) {
    return ExitCode::solver;
  }
  if (dynamic_cast<const DataQualityError*>(&e) || dynamic_cast<const InsufficientDataError*>(&e)) {
    return ExitCode::data_quality;
  }
  return ExitCode::failure;
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t state) {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= 0x100000001b3ULL;
  }
  return state;
}

std::string CsvSeries::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "x,value,error\n";
  for (std::size_t i = 0; i < x.size(); ++i) os << x[i] << "," << value[i] << "," << error[i] << "\n";
  return os.str();
}

std::string PipelineConfig::to_json() const {
  json j = {{"pipeline", pipeline::to_string(name)},
            {"seed", seed},
            {"trials", trials ? json(*trials) : json(nullptr)},
            {"visibility", visibility},
            {"exposure", exposure},
            {"rate", rate},
            {"per_setting", per_setting},
            {"estimator", pipeline::to_string(estimator)},
            {"grid", {grid_n1, grid_n2}},
            {"closed_interval", closed_interval},
            {"repair_cap", repair_cap},
            {"fixtures", fixtures},
            {"input", input},
            {"out", out},
            {"check", check},
            {"threads", threads}};
  return j.dump(2);
}

PipelineConfig PipelineConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: invalid JSON (") + e.what() + ")");
  }
  if (!j.is_object()) throw ParseError("config: top level must be an object");
  PipelineConfig c;
  auto get = [&](const char* key, auto& dst) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(dst);
    } catch (const json::exception&) {
      throw ParseError(std::string("config: field '") + key + "' has the wrong type");
    }
  };
  if (j.contains("pipeline")) {
    std::string n;
    get("pipeline", n);
    c.name = parse_pipeline_name(n);
  }
  get("seed", c.seed);
  if (j.contains("trials") && !j["trials"].is_null()) {
    int t = 0;
    get("trials", t);
    c.trials = t;
  }
  get("visibility", c.visibility);
  get("exposure", c.exposure);
  get("rate", c.rate);
  get("per_setting", c.per_setting);
  if (j.contains("estimator")) {
    std::string e;
    get("estimator", e);
    c.estimator = parse_process_estimator(e);
  }
  if (j.contains("grid")) {
    std::array<int, 2> g{};
    get("grid", g);
    c.grid_n1 = g[0];
    c.grid_n2 = g[1];
  }
  get("closed_interval", c.closed_interval);
  get("repair_cap", c.repair_cap);
  get("fixtures", c.fixtures);
  get("input", c.input);
  get("out", c.out);
  get("check", c.check);
  get("threads", c.threads);
  return c;
}

Report run_pipeline(const PipelineConfig& config) {
  Report report;
  report.config = config;
  Context ctx(config, report);
  std::string stage = to_string(config.name);
  json status;
  try {
    if (config.grid_n1 < 1 || config.grid_n2 < 1) throw ParseError("grid sizes must be positive");
    if (!(config.visibility >= 0.0 && config.visibility <= 1.0)) {
      throw ParseError("visibility must lie in [0, 1]");
    }
    if (!(config.exposure > 0.0) || config.rate <= 0) {
      throw ParseError("exposure and rate must be positive");
    }
    if (config.trials && *config.trials < 2) throw ParseError("trials must be at least 2");
    dispatch(ctx, stage);
  } catch (const std::exception& e) {
    report.exit_code = exit_code_for(e);
    report.error = stage + ": " + e.what();
  }
  if (report.exit_code == ExitCode::ok) {
    for (const auto& c : report.checks) {
      if (!c.passed) report.exit_code = ExitCode::check_failed;
    }
  }

  report.inputs_digest = hex64(ctx.digest());
  json adjustments = json::array();
  for (const auto& a : report.adjustments) {
    adjustments.push_back({{"source", a.source}, {"kind", a.kind}, {"magnitude", a.magnitude}});
  }
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  json body = {{"tool", "qtele"},
               {"pipeline", to_string(config.name)},
               {"config", json::parse(config.to_json())},
               {"inputs", ctx.inputs()},
               {"inputs_digest", report.inputs_digest},
               {"results", ctx.results()},
               {"adjustments", std::move(adjustments)},
               {"checks", std::move(checks)},
               {"status",
                {{"exit_code", static_cast<int>(report.exit_code)},
                 {"error", report.error.empty() ? json(nullptr) : json(report.error)}}}};
  report.body = body.dump(2) + "\n";
  return report;
}

void write_report(const Report& report) {
  const std::string& dir = report.config.out;
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(dir + ": cannot create output directory (" + ec.message() + ")");
  write_text_file(dir + "/report.json", report.body);
  for (const auto& s : report.series) write_text_file(dir + "/" + s.name + ".csv", s.to_csv());
}

}  // namespace qtele::pipeline
