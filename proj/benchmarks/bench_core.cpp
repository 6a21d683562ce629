// Copyright 2026 The Everettropy Authors
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

#include <random>

#include <benchmark/benchmark.h>

#include "everettropy/copyability.hpp"
#include "everettropy/operator.hpp"
#include "everettropy/selection.hpp"
#include "everettropy/state.hpp"
#include "everettropy/szilard.hpp"

namespace {

using namespace everettropy;

Matrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = Complex(g(rng), g(rng));
  }
  return m;
}

DensityState random_state(const SystemLayout& layout, std::uint64_t seed) {
  const Matrix g = random_matrix(layout.total_dim(), seed);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityState::from_operator(Operator(layout, 0.5 * (rho + rho.adjoint())));
}

void BM_PartialTrace(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  std::vector<Subsystem> parts;
  for (std::size_t k = 0; k < q; ++k) parts.push_back({"q" + std::to_string(k), 2});
  const SystemLayout layout(parts);
  const Operator op(layout, random_matrix(layout.total_dim(), 1));
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(op, {"q0", "q1"}));
}
BENCHMARK(BM_PartialTrace)->DenseRange(4, 10, 2);

void BM_Entropy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DensityState rho = random_state(single("s", n), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        von_neumann_entropy(DensityState::from_operator(rho.op())));
  }
}
BENCHMARK(BM_Entropy)->RangeMultiplier(4)->Range(4, 256);

void BM_Szilard(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(szilard::run_szilard(1));
}
BENCHMARK(BM_Szilard);

void BM_ClassifyCopyable(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Operator b(single("s", n), random_matrix(n, 3));
  for (auto _ : state) benchmark::DoNotOptimize(classify_copyable(b));
}
BENCHMARK(BM_ClassifyCopyable)->DenseRange(2, 8, 3);

void BM_SelectionRun(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_seeded_selection(d, d, 0.2, seed++));
}
BENCHMARK(BM_SelectionRun)->DenseRange(2, 4, 1);

}  // namespace

BENCHMARK_MAIN();
