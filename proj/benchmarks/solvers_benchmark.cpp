// Copyright 2026 The bcc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "bcc/approx.hpp"
#include "bcc/exact.hpp"
#include "bcc/ns_programs.hpp"

namespace {

using bcc::BipartiteGraph;

bcc::ChannelTable noisy_channel(std::size_t inputs, std::size_t out1, std::size_t out2,
                                std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t row = out1 * out2;
  std::vector<double> probs(inputs * row);
  for (std::size_t x = 0; x < inputs; ++x) {
    double total = 0.0;
    for (std::size_t j = 0; j < row; ++j) total += probs[x * row + j] = u(eng);
    for (std::size_t j = 0; j < row; ++j) probs[x * row + j] /= total;
  }
  return bcc::validate_channel(std::move(probs), {inputs, out1, out2});
}

BipartiteGraph random_graph(std::size_t left, std::size_t right, double density,
                            std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::bernoulli_distribution coin(density);
  std::vector<BipartiteGraph::Edge> edges;
  for (std::size_t u = 0; u < left; ++u)
    for (std::size_t v = 0; v < right; ++v)
      if (coin(eng)) edges.emplace_back(u, v);
  return BipartiteGraph(left, right, edges);
}

void BM_CompactNs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const bcc::ChannelTable w = noisy_channel(n, 3, 3, 1);
  bcc::LpOptions o;
  o.pivot_rule = state.range(1) ? bcc::PivotRule::kDantzig : bcc::PivotRule::kBland;
  std::uint64_t pivots = 0;
  for (auto _ : state) {
    const bcc::NsValue v = bcc::solve_ns(w, 2, 2, bcc::Objective::kJoint, o);
    pivots = v.pivots;
    benchmark::DoNotOptimize(v.value);
  }
  state.counters["pivots"] = static_cast<double>(pivots);
}
BENCHMARK(BM_CompactNs)->ArgsProduct({{2, 4, 6, 8}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_FullNs(benchmark::State& state) {
  const bcc::ChannelTable w = noisy_channel(2, 2, 2, 2);
  const bcc::LpModel m = bcc::build_ns_full(w, 2, 2, bcc::Objective::kJoint);
  for (auto _ : state) benchmark::DoNotOptimize(bcc::lp_solve(m).value);
}
BENCHMARK(BM_FullNs)->Unit(benchmark::kMillisecond);

void BM_SolveJoint(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const bcc::ChannelTable w = noisy_channel(6, n, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(bcc::solve_joint(w, 2, 2).value);
}
BENCHMARK(BM_SolveJoint)->DenseRange(3, 7, 2)->Unit(benchmark::kMillisecond);

void BM_SolveDqg(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const BipartiteGraph g = random_graph(n, n, 0.3, 4);
  bcc::SolveOptions o;
  o.cap = 50'000'000;
  for (auto _ : state) benchmark::DoNotOptimize(bcc::solve_dqg(g, 3, 3, o).value);
}
BENCHMARK(BM_SolveDqg)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_ApproximateDqg(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const BipartiteGraph g = random_graph(n, n, 0.1, 5);
  for (auto _ : state) benchmark::DoNotOptimize(bcc::approximate_dqg(g, 8, 8).value);
}
BENCHMARK(BM_ApproximateDqg)->RangeMultiplier(4)->Range(16, 256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
