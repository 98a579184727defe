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


#include <benchmark/benchmark.h>

#include "qtele/certification.hpp"
#include "qtele/optics/hdbsm.hpp"
#include "qtele/process.hpp"
#include "qtele/teleport.hpp"
#include "qtele/tomography.hpp"

namespace {

using namespace qtele;

DensityMatrix noisy(const QuditState& psi, double w) {
  return DensityMatrix::from_matrix((1.0 - w) * psi.projector() +
                                    w * CMatrix::Identity(3, 3) / 3.0);
}

void BM_RunTeleportation(benchmark::State& state) {
  const auto inputs = paper_input_states();
  const auto channel = ChannelSpec::rebalanced_qutrit();
  std::size_t i = 0;
  for (auto _ : state) {
    auto run = optics::run_teleportation(inputs[i++ % inputs.size()], channel);
    benchmark::DoNotOptimize(run.success_probability);
  }
}
BENCHMARK(BM_RunTeleportation)->Unit(benchmark::kMillisecond);

void BM_RobustnessMu(benchmark::State& state) {
  const auto rho = noisy(paper_input_states()[9], 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(robustness_mu(rho).mu);
}
BENCHMARK(BM_RobustnessMu)->Unit(benchmark::kMicrosecond);

void BM_StateReconstruction(benchmark::State& state) {
  const auto method = state.range(0) == 0 ? StateMethod::linear : StateMethod::mle;
  const auto counts =
      simulate_counts(noisy(paper_input_states()[5], 0.3), ProjectorSet::canonical(), 500.0, 7);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_state(counts, method).matrix);
}
BENCHMARK(BM_StateReconstruction)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_ProcessFit(benchmark::State& state) {
  const auto chi = ProcessMatrix::white_noise_mixture(0.3);
  std::vector<InputOutputPair> pairs;
  for (const auto& psi : ProjectorSet::mub().kets)
    pairs.push_back({psi, apply_process(chi, DensityMatrix::pure(psi))});
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_process(pairs).residual);
}
BENCHMARK(BM_ProcessFit)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
