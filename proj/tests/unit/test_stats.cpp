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


#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qtele/errors.hpp"
#include "qtele/stats.hpp"

namespace qtele {
namespace {

std::vector<CountsTable> paper_like_data(double exposure) {
  const auto proj = ProjectorSet::canonical();
  return expected_process_counts(ProcessMatrix::white_noise_mixture(0.45), proj.kets, proj,
                                 exposure);
}

double total_counts(const std::vector<CountsTable>& c) {
  double s = 0.0;
  for (const auto& t : c) s += static_cast<double>(t.total());
  return s;
}

TEST(Resample, SeedDeterministicAndThreadIndependent) {
  const auto data = paper_like_data(150.0);
  const auto stat = process_fidelity_statistic(ProjectorSet::canonical().kets);
  const auto a = poisson_resample(data, 20, 42, stat);
  const auto b = poisson_resample(data, 20, 42, stat, {ResampleMode::poisson, 3});
  const auto c = poisson_resample(data, 20, 43, stat);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_NE(a.samples, c.samples);
  EXPECT_EQ(a.n_trials, 20);
  EXPECT_EQ(a.seed, 42u);
}

TEST(Resample, TrialsAreIndependentOfTrialCount) {
  const auto data = paper_like_data(150.0);
  const auto r5 = resample_counts(data, 9, 5);
  const auto again = resample_counts(data, 9, 5);
  for (std::size_t i = 0; i < data.size(); ++i) EXPECT_EQ(r5[i].counts, again[i].counts);
  const auto e10 = poisson_resample(data, 10, 9, total_counts);
  const auto e30 = poisson_resample(data, 30, 9, total_counts);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(e10.samples[i], e30.samples[i]);
}

TEST(Resample, ConstantStatisticHasZeroSpread) {
  const auto e = poisson_resample(paper_like_data(150.0), 25, 1,
                                  [](const std::vector<CountsTable>&) { return 0.25; });
  EXPECT_EQ(e.mean(), 0.25);
  EXPECT_EQ(e.stddev(), 0.0);
}

TEST(Resample, PoissonTotalsUnbiased) {
  const auto data = paper_like_data(150.0);
  const double n0 = total_counts(data);
  const int trials = 400;
  const auto e = poisson_resample(data, trials, 3, total_counts);
  // Sum of independent Poisson draws: mean n0, variance n0.
  EXPECT_NEAR(e.mean(), n0, 3.0 * std::sqrt(n0 / trials));
  EXPECT_NEAR(e.stddev(), std::sqrt(n0), 0.15 * std::sqrt(n0));
}

TEST(Resample, MultinomialKeepsTotals) {
  const auto data = paper_like_data(150.0);
  for (std::uint64_t t = 0; t < 10; ++t) {
    const auto r = resample_counts(data, 4, t, ResampleMode::multinomial);
    for (std::size_t i = 0; i < data.size(); ++i) EXPECT_EQ(r[i].total(), data[i].total());
  }
}

TEST(Resample, FailedTrialsAreFlagged) {
  const auto data = paper_like_data(150.0);
  auto flaky = [](const std::vector<CountsTable>& c) {
    if (c.front().counts.front() % 2 == 0) throw InsufficientDataError("even");
    return 1.0;
  };
  const auto e = poisson_resample(data, 40, 5, flaky);
  EXPECT_GT(e.n_failed(), 0);
  EXPECT_EQ(e.n_failed() + static_cast<int>(e.samples.size()), 40);
  auto never = [](const std::vector<CountsTable>&) -> double { throw SolverError("no"); };
  EXPECT_THROW(poisson_resample(data, 10, 5, never), InsufficientDataError);
  EXPECT_THROW(poisson_resample(data, 1, 5, total_counts), InvariantError);
}

TEST(Resample, ErrorShrinksAsRootExposure) {
  const auto inputs = ProjectorSet::canonical().kets;
  const auto stat = process_fidelity_statistic(inputs);
  const double s1 = poisson_resample(paper_like_data(2000.0), 200, 11, stat).stddev();
  const double s4 = poisson_resample(paper_like_data(8000.0), 200, 11, stat).stddev();
  EXPECT_NEAR(s1 / s4, 2.0, 0.4);
}

TEST(Resample, PaperScaleProcessFidelityError) {
  // The reported error bar on the process fidelity is 0.037.
  const auto inputs = ProjectorSet::canonical().kets;
  const auto e = poisson_resample(paper_like_data(150.0), 200, 20200101,
                                  process_fidelity_statistic(inputs));
  EXPECT_GT(e.stddev(), 0.037 * 0.5);
  EXPECT_LT(e.stddev(), 0.037 * 1.5);
}

TEST(FitFromCounts, RecoversChannelAtHighExposure) {
  const auto proj = ProjectorSet::canonical();
  const auto chi = ProcessMatrix::white_noise_mixture(0.3);
  const auto fit = fit_process_from_counts(proj.kets, expected_process_counts(chi, proj.kets, proj, 1e8));
  EXPECT_NEAR(process_fidelity(fit.chi), process_fidelity(chi), 1e-6);
  EXPECT_THROW(fit_process_from_counts(proj.kets, {}), InsufficientDataError);
}

TEST(Sampling, CoherentStatesNested) {
  const auto a = sampled_coherent_states(10);
  const auto b = sampled_coherent_states(40);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a[i].amplitudes(), b[i].amplitudes());
  for (const auto& s : b) {
    EXPECT_NEAR(std::abs(s[0]), std::abs(s[2]), 1e-15);
    EXPECT_GE(std::arg(s[1] / s[0]), -1e-15);
  }
  EXPECT_THROW(sampled_coherent_states(0), InvariantError);
}

TEST(Convergence, ErrorCurvePlateaus) {
  const auto chi = ProcessMatrix::white_noise_mixture(0.45);
  const std::vector<int> grid = {1, 2, 4, 8, 16, 32, 64};
  const auto r = convergence_study(chi, ConvergenceStatistic::average_fidelity, grid, 60, 7);
  ASSERT_EQ(r.errors.size(), grid.size());
  EXPECT_EQ(r.n_failed, 0);
  const double last = r.errors.back();
  const double prev = r.errors[r.errors.size() - 2];
  EXPECT_LT(std::abs(last - prev) / prev, 0.1);
  for (double v : r.values) EXPECT_NEAR(v, 0.7, 0.05);
  EXPECT_EQ(r.converged_value, last);
  EXPECT_THROW(convergence_study(chi, ConvergenceStatistic::average_fidelity, {4, 2}, 10, 1),
               InvariantError);
}

TEST(DesignStudy, NoiselessLimitIsExact) {
  MubDesignOptions o;
  o.trials = 1;
  o.noiseless = true;
  o.rate = 100000000;
  for (auto est : {ProcessEstimator::physical, ProcessEstimator::tp_linear}) {
    o.estimator = est;
    const auto r = mub_design_study(1, o);
    EXPECT_NEAR(r.mean_mub, 0.7, 1e-6);
    EXPECT_NEAR(r.mean_nonmub, 0.7, 1e-6);
  }
}

TEST(DesignStudy, DeterministicInSeed) {
  MubDesignOptions o;
  o.trials = 6;
  const auto a = mub_design_study(3, o);
  o.threads = 2;
  const auto b = mub_design_study(3, o);
  EXPECT_EQ(a.mub_samples, b.mub_samples);
  EXPECT_EQ(a.nonmub_samples, b.nonmub_samples);
  EXPECT_THROW(mub_design_study(3, MubDesignOptions{0}), InvariantError);
}

TEST(DesignStudy, TpLinearEstimatorIsUnbiasedAtPaperRate) {
  MubDesignOptions o;
  o.estimator = ProcessEstimator::tp_linear;
  const auto r = mub_design_study(20200101, o);
  EXPECT_NEAR(r.mean_mub, 0.7, 4.0 * r.err_mub);
  EXPECT_NEAR(r.mean_nonmub, 0.7, 4.0 * r.err_nonmub);
}

TEST(ParallelFor, PropagatesExceptions) {
  std::vector<int> hit(50, 0);
  parallel_for(50, 4, [&](int i) { hit[i] = 1; });
  EXPECT_EQ(std::accumulate(hit.begin(), hit.end(), 0), 50);
  EXPECT_THROW(parallel_for(10, 3, [](int i) { if (i == 7) throw std::runtime_error("x"); }),
               std::runtime_error);
}

}  // namespace
}  // namespace qtele
