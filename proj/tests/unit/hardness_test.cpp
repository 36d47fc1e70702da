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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bcc/error.hpp"
#include "bcc/hardness.hpp"
#include "bcc/random.hpp"

namespace bcc {
namespace {

// (1/|Y2|) sum_y2 max_x sum_{y1 in S} W(y1 y2 | x), straight from the table.
double table_utility(const ChannelTable& w, const std::vector<std::size_t>& items) {
  double total = 0.0;
  for (std::size_t y2 = 0; y2 < w.out2_size(); ++y2) {
    double best = 0.0;
    for (std::size_t x = 0; x < w.input_size(); ++x) {
      double s = 0.0;
      for (std::size_t y1 : items) s += w(x, y1, y2);
      best = std::max(best, s);
    }
    total += best;
  }
  return total / static_cast<double>(w.out2_size());
}

std::vector<std::size_t> subset(unsigned mask, std::size_t m) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < m; ++i) {
    if (mask >> i & 1u) s.push_back(i);
  }
  return s;
}

TEST(BuildInstance, ShapeAndDeterminism) {
  const HardnessInstance a = build_instance(2, 0.25, 7);
  EXPECT_EQ(a.m, 4u);
  ASSERT_EQ(a.blocks.size(), 2u);
  EXPECT_EQ(a.blocks[0].size(), 2u);
  EXPECT_EQ(a.alphabet(), 7u);
  const double m = 4.0;
  EXPECT_NEAR(a.normalization, 1.0 / (std::pow(m, 1.5) + std::pow(m, 0.75) + m), 1e-15);
  const HardnessInstance b = build_instance(2, 0.25, 7);
  EXPECT_EQ(a.blocks, b.blocks);
  EXPECT_THROW(build_instance(1, 0.25, 0), BadParameters);
  EXPECT_THROW(build_instance(2, 0.0, 0), BadParameters);
}

TEST(BuildInstance, BlocksPartitionItems) {
  for (std::size_t k1 = 2; k1 <= 5; ++k1) {
    const HardnessInstance inst = build_instance(k1, 0.2, k1);
    std::vector<std::size_t> all;
    for (std::size_t j = 0; j < k1; ++j) {
      EXPECT_EQ(inst.blocks[j].size(), k1);
      for (std::size_t i : inst.blocks[j]) {
        EXPECT_EQ(inst.block_of[i], j);
        all.push_back(i);
      }
    }
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expect(k1 * k1);
    std::iota(expect.begin(), expect.end(), 0);
    EXPECT_EQ(all, expect);
  }
}

TEST(Materialize, RowsSumToOne) {
  for (double delta : {0.1, 0.25}) {
    const HardnessInstance inst = build_instance(2, delta, 1);
    for (Variant v : {Variant::kPlanted, Variant::kDecoy}) {
      const ChannelTable w = materialize_channel(inst, v);
      EXPECT_EQ(w.input_size(), 7u);
      EXPECT_EQ(w.out1_size(), 4u);
      EXPECT_EQ(w.out2_size(), 7u);
      for (std::size_t x = 0; x < w.input_size(); ++x) {
        const auto row = w.row(x);
        EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), 1.0, 1e-9);
      }
    }
  }
  EXPECT_THROW(materialize_channel(build_instance(4, 0.25, 0), Variant::kPlanted, 100),
               SizeCapExceeded);
}

TEST(ValueOracle, MatchesTableOnEverySubset) {
  for (double delta : {0.1, 0.25}) {
    const HardnessInstance inst = build_instance(2, delta, 3);
    for (Variant v : {Variant::kPlanted, Variant::kDecoy}) {
      const ChannelTable w = materialize_channel(inst, v);
      for (unsigned mask = 1; mask < 16; ++mask) {
        const auto s = subset(mask, 4);
        EXPECT_NEAR(value_oracle(inst, v, s), table_utility(w, s) / inst.normalization, 1e-12);
        EXPECT_NEAR(receiver1_utility(w, s), table_utility(w, s), 1e-15);
      }
    }
  }
}

TEST(ValueOracle, MatchesTableAtThreeBlocks) {
  const HardnessInstance inst = build_instance(3, 0.15, 4);
  const ChannelTable w = materialize_channel(inst, Variant::kPlanted);
  std::mt19937_64 eng(5);
  for (int t = 0; t < 100; ++t) {
    auto s = subset(static_cast<unsigned>(eng() % 511 + 1), 9);
    EXPECT_NEAR(value_oracle(inst, Variant::kPlanted, s), table_utility(w, s) / inst.normalization,
                1e-10);
  }
}

TEST(ValueOracle, EdgeCases) {
  const HardnessInstance inst = build_instance(2, 0.25, 0);
  EXPECT_EQ(value_oracle(inst, Variant::kPlanted, {}), 0.0);
  EXPECT_THROW(value_oracle(inst, Variant::kPlanted, {4}), DimensionMismatch);
  // A full block at delta = 1/4: max(2, 2 / 4^(1/4), 2) under both.
  EXPECT_NEAR(value_oracle(inst, Variant::kPlanted, inst.blocks[0]), 2.0, 1e-12);
  EXPECT_NEAR(value_oracle(inst, Variant::kDecoy, inst.blocks[0]), 2.0, 1e-12);
  EXPECT_EQ(value_oracle(inst, Variant::kPlanted, {0, 0, 1}),
            value_oracle(inst, Variant::kPlanted, {0, 1}));
}

TEST(ValueOracle, Subadditive) {
  const HardnessInstance inst = build_instance(2, 0.1, 9);
  for (Variant v : {Variant::kPlanted, Variant::kDecoy}) {
    for (unsigned a = 1; a < 16; ++a) {
      for (unsigned b = 1; b < 16; ++b) {
        EXPECT_LE(value_oracle(inst, v, subset(a | b, 4)),
                  value_oracle(inst, v, subset(a, 4)) + value_oracle(inst, v, subset(b, 4)) + 1e-12);
      }
    }
  }
}

TEST(OptimalWelfare, ClosedFormMatchesExhaustive) {
  for (std::size_t k1 : {2u, 3u}) {
    for (double delta : {0.05, 0.1, 0.2, 0.25, 0.3, 0.4}) {
      const HardnessInstance inst = build_instance(k1, delta, 11);
      for (Variant v : {Variant::kPlanted, Variant::kDecoy}) {
        EXPECT_NEAR(optimal_welfare(inst, v), optimal_welfare_exhaustive(inst, v), 1e-9)
            << "k1=" << k1 << " delta=" << delta;
      }
    }
  }
}

TEST(OptimalWelfare, KnownValues) {
  const HardnessInstance small = build_instance(2, 0.1, 0);
  EXPECT_DOUBLE_EQ(optimal_welfare(small, Variant::kPlanted), 4.0);
  const HardnessInstance quarter = build_instance(2, 0.25, 0);
  EXPECT_NEAR(optimal_welfare(quarter, Variant::kDecoy), 2.0 + 3.0 / std::sqrt(2.0), 1e-12);
}

TEST(OptimalWelfare, GapFollowsTrend) {
  const double delta = 0.1;
  std::vector<double> normalized;
  double prev = 0.0;
  for (std::size_t k1 = 2; k1 <= 6; ++k1) {
    const HardnessInstance inst = build_instance(k1, delta, 0);
    const double ratio = optimal_welfare(inst, Variant::kPlanted) /
                         optimal_welfare(inst, Variant::kDecoy);
    EXPECT_GT(ratio, prev);
    prev = ratio;
    normalized.push_back(ratio / std::pow(static_cast<double>(inst.m), 0.5 - 2 * delta));
  }
  const auto [lo, hi] = std::minmax_element(normalized.begin(), normalized.end());
  EXPECT_LE(*hi / *lo, 2.0);
}

TEST(Equipartition, MembershipIsBernoulli) {
  const std::size_t k1 = 3, n = 10000;
  Rng rng(21);
  std::vector<double> hits(k1 * k1, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    const auto blocks = random_equipartition(k1, rng);
    for (std::size_t i : blocks[0]) hits[i] += 1.0;
  }
  const double p = 1.0 / k1;
  const double sigma = std::sqrt(p * (1 - p) / n);
  for (double h : hits) EXPECT_NEAR(h / n, p, 3 * sigma);
}

TEST(QueryExperiment, SingletonsNeverDistinguish) {
  const HardnessInstance inst = build_instance(3, 0.1, 2);
  const QueryLog log = run_query_experiment(inst, singleton_strategy(inst.m), 100);
  EXPECT_FALSE(log.distinguished_at.has_value());
  // The stream cycles through the items, so the whole budget is spent.
  EXPECT_EQ(log.queries.size(), 100u);
}

TEST(QueryExperiment, KnownBlockDistinguishesAtOnce) {
  const HardnessInstance inst = build_instance(2, 0.1, 2);
  const QueryLog log = run_query_experiment(inst, fixed_set_strategy(inst.blocks[1]), 10);
  ASSERT_TRUE(log.distinguished_at.has_value());
  EXPECT_EQ(*log.distinguished_at, 0u);
  EXPECT_EQ(log.queries.size(), 1u);
  EXPECT_TRUE(distinguishes(inst, inst.blocks[1]));
  // At delta = 1/4 a block of 2 does not beat m^(2 delta) = 2.
  EXPECT_FALSE(distinguishes(build_instance(2, 0.25, 2), inst.blocks[1]));
}

TEST(QueryExperiment, BudgetAndAnswers) {
  const HardnessInstance inst = build_instance(4, 0.25, 5);
  const QueryLog log = run_query_experiment(inst, random_subset_strategy(inst.m, 4, 1), 25);
  EXPECT_LE(log.queries.size(), 25u);
  for (const auto& q : log.queries) {
    EXPECT_EQ(q.items.size(), 4u);
    EXPECT_DOUBLE_EQ(q.value, value_oracle(inst, Variant::kPlanted, q.items));
  }
  const QueryLog bis = run_query_experiment(inst, bisection_strategy(inst.m, 3), 40);
  EXPECT_EQ(bis.queries.size(), bis.distinguished_at ? *bis.distinguished_at + 1 : 40u);
}

TEST(QueryExperiment, RandomSubsetRateWithinEnvelope) {
  for (std::size_t k1 : {4u, 5u, 6u}) {
    const double delta = 0.25;
    int hits = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
      const HardnessInstance inst = build_instance(k1, delta, 1000 * k1 + t);
      const std::size_t size = static_cast<std::size_t>(std::lround(std::sqrt(inst.m)));
      hits += run_query_experiment(inst, random_subset_strategy(inst.m, size, t), 1)
                  .distinguished_at.has_value();
    }
    EXPECT_LE(static_cast<double>(hits) / trials, 10 * p_leak(k1, delta) + 1e-12) << "k1=" << k1;
  }
}

}  // namespace
}  // namespace bcc
