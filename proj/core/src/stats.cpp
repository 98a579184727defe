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


#include "qtele/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "detail/rng.hpp"
#include "qtele/algebra.hpp"
#include "qtele/errors.hpp"

namespace qtele {
namespace {

double sample_mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = sample_mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::int64_t draw_poisson(double mean, std::mt19937_64& rng) {
  if (!(mean > 0.0)) return 0;
  return std::poisson_distribution<std::int64_t>(mean)(rng);
}

double mean_mub_of_fit(const std::vector<QuditState>& inputs,
                       const std::vector<CountsTable>& counts,
                       ProcessEstimator estimator = ProcessEstimator::physical) {
  if (estimator == ProcessEstimator::physical) {
    return mub_fidelities(fit_process_from_counts(inputs, counts).chi).mean;
  }
  std::vector<CMatrix> outputs;
  for (const auto& c : counts) outputs.push_back(reconstruct_state(c, StateMethod::linear).matrix);
  ProcessFitOptions opt;
  opt.projectors = counts.front().projectors;
  const CMatrix chi = fit_process_tp(inputs, outputs, opt);
  double sum = 0.0;
  const auto mub = mub_family(3);
  for (const auto& psi : mub) sum += fidelity(apply_process_raw(chi, psi.projector()), psi);
  return sum / static_cast<double>(mub.size());
}

}  // namespace

double ResampleEnsemble::mean() const { return sample_mean(samples); }
double ResampleEnsemble::stddev() const { return sample_std(samples); }

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  const int workers = std::clamp(threads, 1, std::max(n, 1));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<CountsTable> resample_counts(const std::vector<CountsTable>& data, std::uint64_t seed,
                                         std::uint64_t trial, ResampleMode mode) {
  auto rng = detail::make_engine(seed, trial);
  std::vector<CountsTable> out = data;
  for (auto& table : out) {
    if (mode == ResampleMode::poisson) {
      for (auto& n : table.counts) n = draw_poisson(static_cast<double>(n), rng);
      continue;
    }
    const std::int64_t total = table.total();
    if (total == 0) continue;
    std::discrete_distribution<std::size_t> pick(table.counts.begin(), table.counts.end());
    std::fill(table.counts.begin(), table.counts.end(), 0);
    for (std::int64_t k = 0; k < total; ++k) ++table.counts[pick(rng)];
  }
  return out;
}

ResampleEnsemble poisson_resample(const std::vector<CountsTable>& data, int n_trials,
                                  std::uint64_t seed, const CountsStatistic& statistic,
                                  const ResampleOptions& options) {
  if (n_trials < 2) throw InvariantError("poisson_resample: n_trials must be at least 2");
  for (const auto& t : data) t.validate();

  std::vector<double> value(static_cast<std::size_t>(n_trials), 0.0);
  std::vector<char> ok(static_cast<std::size_t>(n_trials), 0);
  parallel_for(n_trials, options.threads, [&](int i) {
    try {
      value[static_cast<std::size_t>(i)] =
          statistic(resample_counts(data, seed, static_cast<std::uint64_t>(i), options.mode));
      ok[static_cast<std::size_t>(i)] = 1;
    } catch (const Error&) {
      ok[static_cast<std::size_t>(i)] = 0;
    }
  });

  ResampleEnsemble e;
  e.n_trials = n_trials;
  e.seed = seed;
  for (int i = 0; i < n_trials; ++i) {
    if (ok[static_cast<std::size_t>(i)]) {
      e.samples.push_back(value[static_cast<std::size_t>(i)]);
    } else {
      e.failed_trials.push_back(i);
    }
  }
  if (e.samples.size() < 2) {
    throw InsufficientDataError("poisson_resample: fewer than two trials succeeded (" +
                                std::to_string(e.n_failed()) + " failed)");
  }
  return e;
}

std::vector<CountsTable> simulate_process_counts(const ProcessMatrix& chi,
                                                 const std::vector<QuditState>& inputs,
                                                 const ProjectorSet& projectors, double exposure,
                                                 std::uint64_t seed, std::uint64_t stream) {
  if (!(exposure > 0.0)) throw InvariantError("simulate_process_counts: exposure must be positive");
  auto rng = detail::make_engine(seed, stream);
  std::vector<CountsTable> out;
  for (const auto& in : inputs) {
    const Eigen::VectorXd p = projectors.probabilities(apply_process(chi, DensityMatrix::pure(in)).matrix());
    CountsTable t{projectors, {}, exposure};
    for (Eigen::Index j = 0; j < p.size(); ++j) t.counts.push_back(draw_poisson(exposure * p(j), rng));
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<CountsTable> expected_process_counts(const ProcessMatrix& chi,
                                                 const std::vector<QuditState>& inputs,
                                                 const ProjectorSet& projectors, double exposure) {
  std::vector<CountsTable> out;
  for (const auto& in : inputs) {
    out.push_back(expected_counts(apply_process(chi, DensityMatrix::pure(in)).matrix(), projectors, exposure));
  }
  return out;
}

ProcessFit fit_process_from_counts(const std::vector<QuditState>& inputs,
                                   const std::vector<CountsTable>& counts, StateMethod method) {
  if (counts.empty()) throw InsufficientDataError("fit_process_from_counts: no data");
  if (inputs.size() != counts.size()) {
    throw InvariantError("fit_process_from_counts: one counts table per input is required");
  }
  std::vector<CMatrix> outputs;
  outputs.reserve(counts.size());
  for (const auto& c : counts) outputs.push_back(reconstruct_state(c, method).matrix);
  ProcessFitOptions opt;
  opt.projectors = counts.front().projectors;
  return reconstruct_process(inputs, outputs, opt);
}

CountsStatistic process_fidelity_statistic(std::vector<QuditState> inputs) {
  return [inputs = std::move(inputs)](const std::vector<CountsTable>& c) {
    return process_fidelity(fit_process_from_counts(inputs, c).chi);
  };
}

CountsStatistic mub_mean_statistic(std::vector<QuditState> inputs) {
  return [inputs = std::move(inputs)](const std::vector<CountsTable>& c) {
    return mean_mub_of_fit(inputs, c);
  };
}

CountsStatistic mean_mu_statistic(std::vector<QuditState> inputs, PhaseGrid grid) {
  return [inputs = std::move(inputs), grid](const std::vector<CountsTable>& c) {
    return batch_certification(fit_process_from_counts(inputs, c).chi, grid).mean_mu_genuine;
  };
}

CountsStatistic state_fidelity_statistic(QuditState target) {
  return [target = std::move(target)](const std::vector<CountsTable>& c) {
    if (c.size() != 1) throw InvariantError("state_fidelity_statistic: expects one counts table");
    return fidelity(reconstruct_state(c.front(), StateMethod::mle).matrix, target);
  };
}

std::vector<QuditState> sampled_coherent_states(int n) {
  if (n < 1) throw InvariantError("sampled_coherent_states: n must be positive");
  // Additive recurrence with the plastic-number increments, the standard
  // low-discrepancy choice in two dimensions.
  const double g = 1.32471795724474602596;
  const double a1 = 1.0 / g;
  const double a2 = 1.0 / (g * g);
  std::vector<QuditState> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double u = std::fmod(0.5 + a1 * k, 1.0);
    const double v = std::fmod(0.5 + a2 * k, 1.0);
    out.push_back(QuditState::normalized(
        {Complex(1.0, 0.0), std::polar(1.0, kPi * u), std::polar(1.0, kPi * v)}));
  }
  return out;
}

StudyResult convergence_study(const ProcessMatrix& chi, ConvergenceStatistic statistic,
                              const std::vector<int>& n_states_grid, int trials,
                              std::uint64_t seed, const ConvergenceOptions& options) {
  if (n_states_grid.empty()) throw InvariantError("convergence_study: empty grid");
  if (!std::is_sorted(n_states_grid.begin(), n_states_grid.end()) || n_states_grid.front() < 1) {
    throw InvariantError("convergence_study: grid must be ascending and positive");
  }
  if (trials < 2) throw InvariantError("convergence_study: trials must be at least 2");

  const ProjectorSet proj = ProjectorSet::canonical();
  const auto inputs = proj.kets;
  const auto data = expected_process_counts(chi, inputs, proj, options.exposure);
  const auto states = sampled_coherent_states(n_states_grid.back());

  // Per trial, the running mean of the per-state statistic at each grid size.
  const std::size_t ng = n_states_grid.size();
  std::vector<std::vector<double>> at(static_cast<std::size_t>(trials));
  parallel_for(trials, options.threads, [&](int t) {
    try {
      const ProcessMatrix c =
          fit_process_from_counts(inputs, resample_counts(data, seed, static_cast<std::uint64_t>(t)))
              .chi;
      std::vector<double> row;
      double acc = 0.0;
      std::size_t g = 0;
      for (int k = 0; k < n_states_grid.back() && g < ng; ++k) {
        const auto& s = states[static_cast<std::size_t>(k)];
        const DensityMatrix out = apply_process(c, DensityMatrix::pure(s));
        acc += statistic == ConvergenceStatistic::average_fidelity ? fidelity(out, s)
                                                                   : robustness_mu(out).mu;
        while (g < ng && n_states_grid[g] == k + 1) {
          row.push_back(acc / (k + 1));
          ++g;
        }
      }
      at[static_cast<std::size_t>(t)] = std::move(row);
    } catch (const Error&) {
      at[static_cast<std::size_t>(t)].clear();
    }
  });

  StudyResult r;
  r.x_grid = n_states_grid;
  for (std::size_t g = 0; g < ng; ++g) {
    std::vector<double> col;
    for (const auto& row : at) {
      if (!row.empty()) col.push_back(row[g]);
    }
    if (col.size() < 2) throw InsufficientDataError("convergence_study: too many failed trials");
    r.values.push_back(sample_mean(col));
    r.errors.push_back(sample_std(col));
  }
  for (const auto& row : at) r.n_failed += row.empty() ? 1 : 0;
  r.converged_value = r.errors.back();
  return r;
}

MubDesignResult mub_design_study(std::uint64_t seed, const MubDesignOptions& options) {
  if (options.rate <= 0) throw InvariantError("mub_design_study: rate must be positive");
  if (options.trials < 1) throw InvariantError("mub_design_study: trials must be positive");
  const ProcessMatrix chi = ProcessMatrix::white_noise_mixture(options.noise_weight);
  const ProjectorSet mub = ProjectorSet::mub();
  const ProjectorSet canonical = ProjectorSet::canonical();

  // Expected counts per setting for one design.
  auto means = [&](const ProjectorSet& proj) {
    std::vector<Eigen::VectorXd> m;
    for (const auto& in : proj.kets) {
      Eigen::VectorXd p = proj.probabilities(apply_process(chi, DensityMatrix::pure(in)).matrix());
      p = p.cwiseMax(0.0);
      m.push_back(options.per_setting ? Eigen::VectorXd(options.rate * p)
                                      : Eigen::VectorXd(options.rate * p / p.sum()));
    }
    return m;
  };
  const auto mean_mub = means(mub);
  const auto mean_can = means(canonical);

  auto draw = [&](const ProjectorSet& proj, const std::vector<Eigen::VectorXd>& mean,
                  std::uint64_t stream) {
    auto rng = detail::make_engine(seed, stream);
    std::vector<CountsTable> data;
    for (const auto& m : mean) {
      CountsTable t{proj, {}, 1.0};
      for (Eigen::Index j = 0; j < m.size(); ++j) {
        t.counts.push_back(options.noiseless ? std::llround(m(j)) : draw_poisson(m(j), rng));
      }
      data.push_back(std::move(t));
    }
    return data;
  };

  const std::size_t n = static_cast<std::size_t>(options.trials);
  std::vector<double> fm(n), fn(n);
  std::vector<char> ok(n, 0);
  parallel_for(options.trials, options.threads, [&](int t) {
    const auto i = static_cast<std::size_t>(t);
    try {
      fm[i] = mean_mub_of_fit(mub.kets, draw(mub, mean_mub, 2 * i), options.estimator);
      fn[i] = mean_mub_of_fit(canonical.kets, draw(canonical, mean_can, 2 * i + 1),
                              options.estimator);
      ok[i] = 1;
    } catch (const Error&) {
      ok[i] = 0;
    }
  });

  MubDesignResult r;
  for (std::size_t i = 0; i < n; ++i) {
    if (!ok[i]) {
      ++r.n_failed;
      continue;
    }
    r.mub_samples.push_back(fm[i]);
    r.nonmub_samples.push_back(fn[i]);
  }
  if (r.mub_samples.empty()) throw InsufficientDataError("mub_design_study: every trial failed");
  const double root_n = std::sqrt(static_cast<double>(r.mub_samples.size()));
  r.mean_mub = sample_mean(r.mub_samples);
  r.err_mub = sample_std(r.mub_samples) / root_n;
  r.mean_nonmub = sample_mean(r.nonmub_samples);
  r.err_nonmub = sample_std(r.nonmub_samples) / root_n;
  return r;
}

}  // namespace qtele
