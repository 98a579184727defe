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


// Poisson Monte Carlo error propagation.
//
// Every trial draws from its own engine, derived from (seed, trial index), so
// ensembles do not depend on how trials are scheduled across threads.

#ifndef QTELE_STATS_HPP
#define QTELE_STATS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "qtele/certification.hpp"
#include "qtele/process.hpp"
#include "qtele/tomography.hpp"
#include "qtele/types.hpp"

namespace qtele {

enum class ResampleMode {
  poisson,      // each count redrawn as Poisson(observed count)
  multinomial,  // total kept, settings redrawn from the observed frequencies
};

struct ResampleOptions {
  ResampleMode mode = ResampleMode::poisson;
  int threads = 1;
};

/// Derived statistic of a data set; may throw qtele::Error to fail a trial.
using CountsStatistic = std::function<double(const std::vector<CountsTable>&)>;

struct ResampleEnsemble {
  int n_trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> samples;     // successful trials, in trial order
  std::vector<int> failed_trials;  // indices of trials whose pipeline threw

  int n_failed() const { return static_cast<int>(failed_trials.size()); }
  double mean() const;
  /// Sample standard deviation (n - 1 denominator).
  double stddev() const;
};

/// One resampled copy of `data` for trial `trial`.
std::vector<CountsTable> resample_counts(const std::vector<CountsTable>& data, std::uint64_t seed,
                                         std::uint64_t trial,
                                         ResampleMode mode = ResampleMode::poisson);

/// Throws InvariantError for n_trials < 2 and InsufficientDataError when
/// fewer than two trials succeed.
ResampleEnsemble poisson_resample(const std::vector<CountsTable>& data, int n_trials,
                                  std::uint64_t seed, const CountsStatistic& statistic,
                                  const ResampleOptions& options = {});

/// Poisson counts of every output chi(|in><in|) at the given exposure.
std::vector<CountsTable> simulate_process_counts(const ProcessMatrix& chi,
                                                 const std::vector<QuditState>& inputs,
                                                 const ProjectorSet& projectors, double exposure,
                                                 std::uint64_t seed, std::uint64_t stream = 0);

/// Rounded expected counts of every output, the noiseless counterpart.
std::vector<CountsTable> expected_process_counts(const ProcessMatrix& chi,
                                                 const std::vector<QuditState>& inputs,
                                                 const ProjectorSet& projectors, double exposure);

/// State estimate per table, then the constrained chi fit on the tables'
/// projectors.
ProcessFit fit_process_from_counts(const std::vector<QuditState>& inputs,
                                   const std::vector<CountsTable>& counts,
                                   StateMethod method = StateMethod::linear);

CountsStatistic process_fidelity_statistic(std::vector<QuditState> inputs);
CountsStatistic mub_mean_statistic(std::vector<QuditState> inputs);
/// Mean robustness over the genuine states of the grid.
CountsStatistic mean_mu_statistic(std::vector<QuditState> inputs, PhaseGrid grid);
/// Fidelity of the single reconstructed state with `target`.
CountsStatistic state_fidelity_statistic(QuditState target);

/// n states (|0> + e^{i a}|1> + e^{i b}|2>)/sqrt3 with (a, b) spread over
/// [0, pi]^2 by a Kronecker sequence; the first n are a prefix of the first n + 1.
std::vector<QuditState> sampled_coherent_states(int n);

enum class ConvergenceStatistic { average_fidelity, mean_mu };

struct StudyResult {
  std::vector<int> x_grid;
  std::vector<double> values;  // ensemble mean of the statistic at each x
  std::vector<double> errors;  // ensemble standard deviation at each x
  double converged_value = 0.0;
  int n_failed = 0;
};

struct ConvergenceOptions {
  double exposure = 150.0;  // expected count of a setting with unit probability
  int threads = 1;
};

/// Synthetic counts of chi on the nine canonical inputs are resampled, chi is
/// refitted per trial and the statistic evaluated on the first n sampled
/// states. For mean_mu the statistic is the mean over all n states, genuine or
/// not, which keeps it continuous in chi.
StudyResult convergence_study(const ProcessMatrix& chi, ConvergenceStatistic statistic,
                              const std::vector<int>& n_states_grid, int trials,
                              std::uint64_t seed, const ConvergenceOptions& options = {});

enum class ProcessEstimator {
  physical,   // completely positive and trace preserving fit
  tp_linear,  // trace preserving least squares, positivity not enforced
};

struct MubDesignOptions {
  int rate = 150;
  int trials = 100;
  bool per_setting = false;  // rate per projector instead of per input state
  bool noiseless = false;    // rounded expected counts instead of Poisson draws
  double noise_weight = 0.45;
  ProcessEstimator estimator = ProcessEstimator::physical;
  int threads = 1;
};

struct MubDesignResult {
  double mean_mub = 0.0;
  double err_mub = 0.0;  // standard error of the mean
  double mean_nonmub = 0.0;
  double err_nonmub = 0.0;
  std::vector<double> mub_samples;
  std::vector<double> nonmub_samples;
  int n_failed = 0;
};

/// Process tomography of (1 - w) chi_ideal + w I/9 with the twelve MUB states
/// as inputs and projectors versus the nine canonical ones; each trial scores
/// the mean MUB fidelity of the reconstructed chi.
MubDesignResult mub_design_study(std::uint64_t seed, const MubDesignOptions& options = {});

/// Runs fn(i) for i in [0, n) on up to `threads` threads.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace qtele

#endif  // QTELE_STATS_HPP
