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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bcc/approx.hpp"
#include "bcc/error.hpp"
#include "bcc/exact.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace bcc {
namespace {

using testing::Engine;

BipartiteGraph k22() {
  const std::vector<BipartiteGraph::Edge> e{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  return BipartiteGraph(2, 2, e);
}

BipartiteGraph star3() {
  const std::vector<BipartiteGraph::Edge> e{{0, 0}, {0, 1}, {0, 2}};
  return BipartiteGraph(1, 3, e);
}

const double kCertified = 0.5 * std::pow(1.0 - std::exp(-1.0), 2.0);

TEST(UpperBoundRight, Examples) {
  EXPECT_EQ(upper_bound_right(k22(), 2, Partition::singletons(2)), 4u);
  EXPECT_EQ(upper_bound_right(star3(), 2, Partition::singletons(3)), 3u);
}

TEST(RandomLeftPartition, OnePartAndDeterminism) {
  Engine eng(60);
  const BipartiteGraph g = testing::random_graph(eng, 7, 4, 0.5);
  const Partition one = random_left_partition(g, 1, 99);
  for (auto v : one.assignment()) EXPECT_EQ(v, 0u);
  EXPECT_EQ(random_left_partition(g, 3, 5), random_left_partition(g, 3, 5));
}

TEST(ExpectedEdges, Examples) {
  EXPECT_DOUBLE_EQ(exact_expected_edges(k22(), 2, Partition::singletons(2)), 3.0);
  Engine eng(61);
  const BipartiteGraph g = testing::random_graph(eng, 5, 6, 0.3);
  const Partition p2 = testing::random_partition(eng, 6, 3);
  std::size_t adjacent = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    adjacent += quotient_degree(g, Partition::trivial(5), p2, Side::kRight, i) > 0;
  }
  EXPECT_DOUBLE_EQ(exact_expected_edges(g, 1, p2), static_cast<double>(adjacent));
}

TEST(ExpectedEdges, EqualsAverageOverAllAssignments) {
  Engine eng(62);
  for (int t = 0; t < 40; ++t) {
    const BipartiteGraph g = testing::random_graph(eng, testing::uniform_size(eng, 1, 6),
                                                   testing::uniform_size(eng, 1, 6), 0.4);
    const std::size_t parts = testing::uniform_size(eng, 1, 3);
    const Partition p2 = testing::random_partition(eng, g.right_size(), 3);
    EXPECT_NEAR(exact_expected_edges(g, parts, p2), testing::mean_quotient_edges(g, parts, p2),
                1e-9);
  }
}

TEST(ExpectedEdges, ConcavityLowerBound) {
  Engine eng(63);
  for (int t = 0; t < 40; ++t) {
    const BipartiteGraph g = testing::random_graph(eng, 8, 6, 0.4);
    const std::size_t k1 = testing::uniform_size(eng, 1, 4);
    const std::size_t l1 = testing::uniform_size(eng, 1, k1);
    const Partition p2 = testing::random_partition(eng, 6, 3);
    const double f = 1.0 - std::pow(1.0 - 1.0 / static_cast<double>(l1), static_cast<double>(k1));
    const double lower = f / static_cast<double>(k1) *
                         static_cast<double>(upper_bound_right(g, k1, p2));
    EXPECT_GE(exact_expected_edges(g, l1, p2), lower - 1e-9);
  }
}

TEST(Derandomize, BeatsExpectation) {
  const Partition p1 = derandomize_left(k22(), 2, Partition::singletons(2));
  EXPECT_EQ(quotient_edge_count(k22(), p1, Partition::singletons(2)), 4u);
  Engine eng(64);
  for (int t = 0; t < 60; ++t) {
    const BipartiteGraph g = testing::random_graph(eng, 7, 6, 0.35);
    const std::size_t parts = testing::uniform_size(eng, 1, 4);
    const Partition p2 = testing::random_partition(eng, 6, 3);
    const Partition p1 = derandomize_left(g, parts, p2);
    EXPECT_EQ(p1.num_parts(), parts);
    EXPECT_GE(static_cast<double>(quotient_edge_count(g, p1, p2)),
              exact_expected_edges(g, parts, p2) - 1e-9);
  }
}

TEST(Derandomize, SingleLeftVertex) {
  const Partition p2 = Partition(2, {0, 1, 1});
  const Partition p1 = derandomize_left(star3(), 3, p2);
  EXPECT_EQ(quotient_edge_count(star3(), p1, p2), 2u);
}

TEST(Welfare, UtilityMatchesDefinition) {
  const WelfareInstance inst{k22(), 1, 2};
  EXPECT_EQ(welfare_utility(inst, std::vector<std::size_t>{0, 1}), 1u);
  EXPECT_EQ(welfare_value(WelfareInstance{k22(), 2, 2}, Partition::singletons(2)), 4u);
}

TEST(Welfare, GreedyExamples) {
  EXPECT_EQ(welfare_value(WelfareInstance{k22(), 2, 2}, greedy_welfare({k22(), 2, 2})), 4u);
  EXPECT_EQ(welfare_value(WelfareInstance{star3(), 2, 3}, greedy_welfare({star3(), 2, 3})), 3u);
}

TEST(Welfare, GreedyIsHalfOfOptimum) {
  Engine eng(65);
  for (int t = 0; t < 80; ++t) {
    const BipartiteGraph g = testing::random_graph(eng, testing::uniform_size(eng, 1, 7),
                                                   testing::uniform_size(eng, 1, 7), 0.35);
    const std::size_t k1 = testing::uniform_size(eng, 1, 3), k2 = testing::uniform_size(eng, 1, 3);
    const WelfareInstance inst{g, k1, k2};
    const std::size_t opt = testing::brute_welfare(g, k1, k2);
    const Partition p = greedy_welfare(inst);
    EXPECT_EQ(p.num_parts(), k2);
    EXPECT_GE(2 * welfare_value(inst, p), opt);
    EXPECT_LE(welfare_value(inst, p), opt);
  }
}

TEST(Welfare, OrderedGreedyValidatesOrder) {
  const WelfareInstance inst{k22(), 2, 2};
  EXPECT_THROW(greedy_welfare_ordered(inst, {0}), DimensionMismatch);
  EXPECT_THROW(greedy_welfare_ordered(inst, {0, 7}), DimensionMismatch);
  EXPECT_EQ(welfare_value(inst, greedy_welfare_ordered(inst, {1, 0})), 4u);
}

TEST(ApproximateDqg, Examples) {
  const ApproxResult a = approximate_dqg(k22(), 2, 2);
  EXPECT_EQ(a.value, 4u);
  EXPECT_DOUBLE_EQ(a.ratio_certificate, 1.0);
  EXPECT_EQ(approximate_dqg(star3(), 2, 3).value, 3u);
}

TEST(ApproximateDqg, CertifiedAgainstOptimum) {
  Engine eng(66);
  double worst = 1.0;
  for (int t = 0; t < 80; ++t) {
    const BipartiteGraph g = testing::random_graph(eng, testing::uniform_size(eng, 1, 6),
                                                   testing::uniform_size(eng, 1, 6), 0.4);
    const std::size_t k1 = testing::uniform_size(eng, 1, 3), k2 = testing::uniform_size(eng, 1, 3);
    ApproxOptions o;
    o.seed = static_cast<std::uint64_t>(t);
    const ApproxResult a = approximate_dqg(g, k1, k2, o);
    const std::size_t opt = testing::brute_dqg(g, k1, k2);
    EXPECT_LE(a.value, opt);
    EXPECT_GE(opt, 0u);
    EXPECT_LE(opt, a.upper_bound);
    EXPECT_EQ(a.value, quotient_edge_count(g, a.p1, a.p2));
    EXPECT_GE(static_cast<double>(a.value), kCertified * static_cast<double>(opt) - 1e-9);
    if (opt > 0) worst = std::min(worst, static_cast<double>(a.value) / static_cast<double>(opt));
  }
  EXPECT_GE(worst, kCertified);
}

TEST(ApproximateDqg, SeedDeterminismAndWorkers) {
  Engine eng(67);
  const BipartiteGraph g = testing::random_graph(eng, 9, 9, 0.3);
  ApproxOptions a, b;
  a.seed = b.seed = 17;
  b.workers = 4;
  const ApproxResult r1 = approximate_dqg(g, 3, 3, a);
  const ApproxResult r2 = approximate_dqg(g, 3, 3, b);
  EXPECT_EQ(r1.p1, r2.p1);
  EXPECT_EQ(r1.p2, r2.p2);
  EXPECT_EQ(r1.value, r2.value);
}

TEST(ApproximateDqg, UpperBoundComponents) {
  Engine eng(68);
  for (int t = 0; t < 30; ++t) {
    const BipartiteGraph g = testing::random_graph(eng, 6, 5, 0.4);
    const std::size_t ub = dqg_upper_bound(g, 2, 3);
    EXPECT_LE(ub, 6u);
    EXPECT_LE(ub, g.num_edges());
    EXPECT_GE(ub, testing::brute_dqg(g, 2, 3));
  }
}

TEST(ApproximateDetbcc, PerfectChannel) {
  const DeterministicChannel d(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const DetBccResult r = approximate_detbcc(d, 2, 2);
  EXPECT_DOUBLE_EQ(r.probability, 1.0);
  EXPECT_DOUBLE_EQ(joint_success(to_table(d), r.code), 1.0);
}

TEST(ApproximateDetbcc, CodeRealizesReportedProbability) {
  Engine eng(69);
  for (int t = 0; t < 30; ++t) {
    const DeterministicChannel d = testing::random_deterministic(eng, 7, 4, 4);
    const DetBccResult r = approximate_detbcc(d, 2, 3);
    const ChannelTable w = to_table(d);
    EXPECT_NEAR(joint_success(w, r.code), r.probability, 1e-12);
    EXPECT_NEAR(r.probability * 6.0, static_cast<double>(r.approx.value), 1e-9);
    EXPECT_LE(r.probability, solve_joint(w, 2, 3).value + 1e-12);
  }
}

TEST(MonteCarlo, MeanMatchesExpectedEdges) {
  Engine eng(70);
  for (int t = 0; t < 5; ++t) {
    const BipartiteGraph g = testing::random_graph(eng, 8, 6, 0.35);
    const Partition p2 = testing::random_partition(eng, 6, 3);
    const std::size_t parts = 2 + t % 2;
    const int n = 4000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = static_cast<double>(
          quotient_edge_count(g, testing::random_partition(eng, 8, parts), p2));
      s += v;
      s2 += v * v;
    }
    const double mean = s / n;
    const double sd = std::sqrt(std::max(0.0, s2 / n - mean * mean) / n);
    EXPECT_LE(std::abs(mean - exact_expected_edges(g, parts, p2)), 4 * sd + 1e-9);
  }
}

}  // namespace
}  // namespace bcc
