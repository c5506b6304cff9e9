// Copyright 2026 The photodisc Authors
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

#include <random>

#include "photodisc/cache.hpp"
#include "photodisc/discriminate.hpp"
#include "photodisc/networks.hpp"
#include "photodisc/optics.hpp"
#include "photodisc/scattering.hpp"
#include "photodisc/schur_weyl.hpp"

namespace {

using namespace photodisc;

void BM_Permanent(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Eigen::MatrixXcd m = random_unitary(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(permanent(m));
}
BENCHMARK(BM_Permanent)->DenseRange(4, 12, 2);

void BM_BuildTransform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_transform(n, n));
}
BENCHMARK(BM_BuildTransform)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_OutcomeTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto t = shared_transform(n, n);
  const auto rho = rho_singly(*t);
  std::mt19937_64 rng(2);
  const Interferometer u(random_unitary(n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(outcome_table(rho, u, *t));
}
BENCHMARK(BM_OutcomeTable)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

void BM_PermanentPathwaySuccess(benchmark::State& state) {
  const auto u = table1_network(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(success_probability_permanent(u, NamedState::kCompletely));
}
BENCHMARK(BM_PermanentPathwaySuccess)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
