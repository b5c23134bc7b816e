// Copyright 2026 The dephaser Authors
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

// Serial reference versus OpenMP kernels for the two hot paths.
#include <benchmark/benchmark.h>

#include "dephaser/statistics.hpp"

namespace {

using namespace dephaser;

DephasingModel bench_model(int d, Index env) {
  std::vector<HermitianOperator> blocks;
  for (int j = 0; j < d; ++j) blocks.push_back(random_hermitian(env, 40 + j));
  return DephasingModel(std::move(blocks), random_density(env, 99));
}

std::vector<double> bench_times(std::size_t n) {
  std::vector<double> t{0.0};
  for (std::size_t k = 1; k <= n; ++k) t.push_back(0.37 * static_cast<double>(k));
  return t;
}

ExecutionPolicy policy_of(const benchmark::State& state) {
  return state.range(0) == 0 ? ExecutionPolicy::kSerial : ExecutionPolicy::kParallel;
}

void BM_TensorTable(benchmark::State& state) {
  const ExactTensorProvider provider(bench_model(3, 4));
  const std::vector<double> times = bench_times(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(provider.tensor_table(times, policy_of(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_TensorTable)->ArgsProduct({{0, 1}, {2, 3, 4}})->Unit(benchmark::kMillisecond);

void BM_JointDistribution(benchmark::State& state) {
  const int d = 3;
  const ExactTensorProvider provider(bench_model(d, 3));
  const SystemPreparation prep = SystemPreparation::explicit_state(random_density(d, 7));
  const ProjectiveMeasurement pvm = random_basis(d, 8);
  const std::vector<double> t = bench_times(static_cast<std::size_t>(state.range(1)));
  const TimeGrid grid(0.0, std::vector<double>(t.begin() + 1, t.end()));
  for (auto _ : state) benchmark::DoNotOptimize(joint_distribution(provider, prep, pvm, grid, policy_of(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_JointDistribution)->ArgsProduct({{0, 1}, {2, 3, 4}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
