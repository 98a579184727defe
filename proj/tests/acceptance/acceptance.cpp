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


// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qtele/algebra.hpp"
#include "qtele/certification.hpp"
#include "qtele/optics/hdbsm.hpp"
#include "qtele/pipeline/fixtures.hpp"
#include "qtele/process.hpp"
#include "qtele/stats.hpp"
#include "qtele/teleport.hpp"
#include "support/golden.hpp"
#include "support/oracles.hpp"

namespace {

using namespace qtele;
using optics::Stage;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;  // 0: no runtime limit
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const pipeline::FixtureSet& fixtures() {
  static const pipeline::FixtureSet fx(QTELE_FIXTURE_DIR);
  return fx;
}

Outcome ideal_protocol() {
  const auto ch = ChannelSpec::maximal(3);
  double worst = 0.0;
  for (const auto& in : paper_input_states()) {
    for (int n = 0; n < 3; ++n) {
      for (int m = 0; m < 3; ++m) {
        const double f = std::norm(teleport_ideal(ch, in, {n, m}).inner(in));
        worst = std::max(worst, std::abs(1.0 - f));
      }
    }
  }
  return {worst <= 1e-12, "max |1 - F| over 90 cases = " + fmt("%.2e", worst)};
}

Outcome golden_path() {
  const auto circuit = optics::build_hdbsm_circuit(3);
  std::vector<QuditState> inputs = paper_input_states();
  std::mt19937_64 rng(2);
  for (int k = 0; k < 5; ++k) inputs.push_back(QuditState::normalized(testing::random_ket(3, rng)));
  double gap = 0.0;
  double p_err = 0.0;
  for (const auto& in : inputs) {
    const auto init = optics::prepare_input_state(in, ChannelSpec::rebalanced_qutrit());
    for (Stage s : {Stage::PBS1, Stage::BD1_BD3, Stage::HWPS, Stage::BD2_BD4, Stage::AUX_PBS,
                    Stage::HWP1_4}) {
      const auto got = optics::run_stages(init, circuit, Stage::PBS1, s);
      gap = std::max(gap, testing::gap_up_to_phase(got, testing::printed_stage_state(s, in)));
    }
    const auto run = optics::run_teleportation(in, ChannelSpec::rebalanced_qutrit());
    p_err = std::max(p_err, std::abs(run.success_probability - 1.0 / 18.0));
  }
  const Rational single = success_probability(Scheme::maximal_single_basis);
  const Rational rebalanced = success_probability(Scheme::nonmaximal_rebalanced);
  const bool ok = gap <= 1e-9 && p_err <= 1e-9 && single == Rational::make(1, 54) &&
                  rebalanced == Rational::make(1, 18);
  return {ok, "stage gap " + fmt("%.2e", gap) + ", |P - 1/18| " + fmt("%.2e", p_err) +
                  ", single-basis " + single.str() + ", rebalanced " + rebalanced.str()};
}

Outcome noise_cancellation() {
  const auto circuit = optics::build_hdbsm_circuit(3);
  double worst = 0.0;
  double before = 1.0;
  // |0>_1 (x) |22>_23 carries only the |02> term, |2>_1 (x) |00>_23 only |20>.
  const std::pair<int, std::vector<double>> cases[] = {{0, {0.0, 0.0, 1.0}},
                                                        {2, {1.0, 0.0, 0.0}}};
  for (const auto& [level, s] : cases) {
    const auto init = optics::prepare_input_state(QuditState::basis(3, level),
                                                  ChannelSpec::from_coefficients(s));
    before = std::min(before, optics::run_stages(init, circuit, Stage::PBS1, Stage::BD2_BD4).norm2());
    for (const auto& [p, a] : optics::run_stages(init, circuit, Stage::PBS1, Stage::AUX_PBS).terms()) {
      worst = std::max(worst, std::abs(a));
    }
  }
  return {worst <= 1e-12 && before > 0.0,
          "max amplitude after auxiliary selection " + fmt("%.2e", worst) +
              " (norm before " + fmt("%.3f", before) + ")"};
}

Outcome visibility_claim() {
  const auto inputs = paper_input_states();
  std::vector<std::vector<double>> f(3);
  const double vs[] = {1.0, 0.9, 0.8};
  for (int iv = 0; iv < 3; ++iv) {
    for (const auto& in : inputs) {
      const auto r = optics::run_teleportation(in, ChannelSpec::rebalanced_qutrit(),
                                               optics::VisibilityModel::shared(vs[iv]));
      f[iv].push_back(fidelity(r.rho, in));
    }
  }
  double basis_err = 0.0;
  bool decreasing = true;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    for (int iv = 0; iv < 3; ++iv) {
      if (k < 3) basis_err = std::max(basis_err, std::abs(1.0 - f[iv][k]));
    }
    if (k >= 3 && !(f[0][k] > f[1][k] && f[1][k] > f[2][k])) decreasing = false;
  }
  return {basis_err <= 1e-9 && decreasing,
          "basis states |1 - F| " + fmt("%.1e", basis_err) + "; superpositions at V=0.8 F(phi10) = " +
              fmt("%.4f", f[2][9]) + (decreasing ? ", strictly ordered" : ", NOT ordered")};
}

Outcome paper_data() {
  const auto rep = fixtures().reported();
  const auto inputs = paper_input_states();
  double worst = 0.0;
  double rho4 = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double f = fidelity(fixtures().printed_state(i).rho, inputs[i - 1]);
    const double d = std::abs(f - rep.state_fidelity(i));
    if (i == 4) {
      rho4 = d;
    } else {
      worst = std::max(worst, d);
    }
  }
  // rho_4 recomputes to 0.745 against a listed 0.724; that row is a documented
  // deviation and asserted as such.
  const bool ok = worst <= 0.02 && rho4 > 0.02;
  return {ok, "max deviation over rho1-3,5-10 " + fmt("%.4f", worst) + "; rho4 deviation " +
                  fmt("%.4f", rho4) + " (documented)"};
}

Outcome process_reconstruction() {
  std::vector<QuditState> inputs = paper_input_states();
  inputs.pop_back();
  std::vector<CMatrix> outs;
  for (int i = 1; i <= 9; ++i) outs.push_back(fixtures().printed_state(i).rho.matrix());
  const auto fit = reconstruct_process(inputs, outs);
  const double fp = process_fidelity(fit.chi);
  const double gap = (fit.chi.matrix() - fixtures().printed_chi().chi.matrix()).cwiseAbs().maxCoeff();
  return {std::abs(fp - 0.596) <= 0.02 && gap <= 0.02,
          "process fidelity " + fmt("%.4f", fp) + ", max |chi - chi_printed| " + fmt("%.4f", gap)};
}

Outcome mub_suite() {
  const auto rep = fixtures().reported();
  const auto m = mub_fidelities(fixtures().printed_chi().chi);
  double worst = 0.0;
  for (int i = 0; i < 12; ++i) worst = std::max(worst, std::abs(m.values[i] - rep.mub_fidelities[i]));
  const double formula = average_fidelity_from_process(0.596, 3);
  const bool ok = worst <= 0.01 && std::abs(m.mean - 0.697) <= 0.005 &&
                  formula == (0.596 * 3 + 1) / 4 && std::abs(formula - 0.697) < 1e-12;
  return {ok, "max |F_i - listed| " + fmt("%.4f", worst) + ", mean " + fmt("%.4f", m.mean) +
                  ", (0.596*3+1)/4 = " + fmt("%.6f", formula)};
}

Outcome certification() {
  const auto coherent = DensityMatrix::pure(QuditState::normalized({1.0, 1.0, 1.0}));
  const double mu_a = robustness_mu(coherent).mu;
  const double mu_a_oracle = testing::grid_robustness(coherent.matrix(), 201);
  const auto b = DensityMatrix::pure(QuditState::normalized(
      {std::sqrt(1.0 / 8.0), std::sqrt(1.0 / 8.0), -std::sqrt(3.0 / 4.0)}));
  const double nl = nonlinear_criterion(b);
  const double wit = fidelity_witness(b);
  const auto batch = batch_certification(fixtures().printed_chi().chi, PhaseGrid{});
  const bool a_ok = std::abs(mu_a - 0.5) <= 1e-5 && std::abs(mu_a_oracle - 0.5) <= 2e-3;
  const bool b_ok = std::abs(nl - 1.475) <= 1e-3 && nl > 1.0 && wit < 2.0 / 3.0;
  const bool c_ok = std::abs(batch.n_genuine - 251) <= 15 &&
                    std::abs(batch.mean_mu_genuine - 0.111) <= 0.034;
  std::ostringstream os;
  os << "(a) mu " << fmt("%.6f", mu_a) << " oracle " << fmt("%.4f", mu_a_oracle) << "; (b) "
     << fmt("%.4f", nl) << " / witness " << fmt("%.4f", wit) << "; (c) n_genuine "
     << batch.n_genuine << ", mean mu " << fmt("%.4f", batch.mean_mu_genuine);
  return {a_ok && b_ok && c_ok, os.str()};
}

Outcome oracle_equivalence() {
  constexpr int kPoints = 100;
  // Grid steps of 1/99 on each split bound how far the oracle can trail.
  constexpr double kResolution = 0.03;
  std::mt19937_64 rng(9);
  int disagreements = 0;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const CMatrix rho = testing::random_density(3, 1 + t % 3, rng);
    const double mu = robustness_mu(DensityMatrix::from_matrix(rho)).mu;
    const double grid = testing::grid_robustness(rho, kPoints, 1e-4);
    // A feasible grid point below mu would refute the solver outright.
    if (grid < mu - 1e-4 || grid - mu > kResolution) ++disagreements;
    worst = std::max(worst, grid - mu);
  }
  return {disagreements == 0, std::to_string(disagreements) + " disagreements; max grid - mu " +
                                  fmt("%.4f", worst)};
}

Outcome mc_studies() {
  std::ostringstream os;
  bool ok = true;

  const auto proj = ProjectorSet::canonical();
  const auto data = expected_process_counts(ProcessMatrix::white_noise_mixture(0.45), proj.kets,
                                            proj, 150.0);
  const auto stat = process_fidelity_statistic(proj.kets);
  const auto a = poisson_resample(data, 20, 123, stat);
  const auto b = poisson_resample(data, 20, 123, stat);
  const bool det = a.samples == b.samples && poisson_resample(data, 20, 124, stat).samples != a.samples;
  ok = ok && det;
  os << (det ? "deterministic" : "NOT deterministic");

  const std::vector<int> grid = {1, 2, 4, 8, 16, 32, 64, 128};
  const auto chi = fixtures().printed_chi().chi;
  for (auto s : {ConvergenceStatistic::average_fidelity, ConvergenceStatistic::mean_mu}) {
    const auto r = convergence_study(chi, s, grid, 100, 20200101);
    const double last = r.errors.back();
    const double prev = r.errors[r.errors.size() - 2];
    const double rel = std::abs(last - prev) / prev;
    ok = ok && rel < 0.1;
    os << "; " << (s == ConvergenceStatistic::average_fidelity ? "fidelity" : "mu")
       << " plateau change " << fmt("%.3f", rel);
  }

  const auto d = mub_design_study(20200101);
  const bool design = std::abs(d.mean_mub - 0.700) <= 0.005 && std::abs(d.mean_nonmub - 0.699) <= 0.005;
  ok = ok && design;
  os << "; design study MUB " << fmt("%.4f", d.mean_mub) << " non-MUB " << fmt("%.4f", d.mean_nonmub);
  if (!design) {
    MubDesignOptions o;
    o.estimator = ProcessEstimator::tp_linear;
    const auto l = mub_design_study(20200101, o);
    os << " (positivity-free fit: " << fmt("%.4f", l.mean_mub) << " / " << fmt("%.4f", l.mean_nonmub)
       << ")";
  }
  return {ok, os.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "ideal protocol", 1.0, ideal_protocol},
      {2, "optical golden path", 10.0, golden_path},
      {3, "noise-term cancellation", 0.0, noise_cancellation},
      {4, "visibility claim", 0.0, visibility_claim},
      {5, "printed state fidelities", 0.0, paper_data},
      {6, "process reconstruction", 30.0, process_reconstruction},
      {7, "MUB suite", 0.0, mub_suite},
      {8, "certification", 300.0, certification},
      {9, "oracle equivalence", 300.0, oracle_equivalence},
      {10, "Monte Carlo studies", 0.0, mc_studies},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += "; over the " + fmt("%.0f", c.budget_s) + " s budget";
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
