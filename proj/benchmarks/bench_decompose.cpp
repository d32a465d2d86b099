// Copyright 2026 The schmidt authors
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

#include "schmidt/decompose.hpp"
#include "schmidt/state.hpp"

using namespace schmidt;

namespace {

void BM_DecomposeTripartite(benchmark::State& state) {
  const std::size_t d = state.range(0);
  auto [psi, planted] = random_decomposable({d, d, d}, d, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose_tripartite(psi));
  }
}
BENCHMARK(BM_DecomposeTripartite)->DenseRange(2, 6);

void BM_DecomposeQuadripartite(benchmark::State& state) {
  const std::size_t d = state.range(0);
  auto [psi, planted] = random_decomposable({d, d, d, d}, d, 12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose_quadripartite(psi));
  }
}
BENCHMARK(BM_DecomposeQuadripartite)->DenseRange(2, 4);

void BM_DecomposeMultipartite(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const std::vector<std::size_t> dims(n, 2);
  auto [psi, planted] = random_decomposable(dims, 2, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose_multipartite(psi));
  }
}
BENCHMARK(BM_DecomposeMultipartite)->DenseRange(3, 7);

void BM_RejectHaarRandom(benchmark::State& state) {
  const StateTensor psi = haar_state({2, 2, 2}, 14);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose_tripartite(psi));
  }
}
BENCHMARK(BM_RejectHaarRandom);

}  // namespace

BENCHMARK_MAIN();
