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

#include "schmidt/linalg.hpp"
#include "schmidt/rng.hpp"
#include "schmidt/state.hpp"

using namespace schmidt;

namespace {

ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix g(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) g(r, c) = rng.complex_gaussian();
  ComplexMatrix h = g + g.adjoint();
  h *= 0.5;
  return h;
}

void BM_HermitianEig(benchmark::State& state) {
  const auto h = random_hermitian(state.range(0), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_eig(h));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HermitianEig)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_Svd(benchmark::State& state) {
  Rng rng(2);
  const std::size_t n = state.range(0);
  ComplexMatrix a(n, n + 2);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n + 2; ++c) a(r, c) = rng.complex_gaussian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(svd(a));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Svd)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_JointDiagonalize(benchmark::State& state) {
  Rng rng(3);
  const std::size_t n = state.range(0);
  const ComplexMatrix q = haar_unitary(n, rng);
  std::vector<ComplexMatrix> family;
  for (int t = 0; t < 4; ++t) {
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = rng.uniform(0.0, 1.0);
    family.push_back(q * d * q.adjoint());
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(joint_diagonalize(family));
  }
}
BENCHMARK(BM_JointDiagonalize)->RangeMultiplier(2)->Range(4, 32);

}  // namespace

BENCHMARK_MAIN();
