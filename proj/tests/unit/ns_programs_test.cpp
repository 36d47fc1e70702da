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
#include <numeric>

#include "bcc/error.hpp"
#include "bcc/exact.hpp"
#include "bcc/ns_programs.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace bcc {
namespace {

using testing::Engine;

ChannelTable perfect() {
  return to_table(DeterministicChannel(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

ChannelTable one_input() { return validate_channel({0.25, 0.25, 0.25, 0.25}, {1, 2, 2}); }

ChannelTable permuted(const ChannelTable& w, const std::vector<std::size_t>& px,
                      const std::vector<std::size_t>& p1, const std::vector<std::size_t>& p2) {
  std::vector<double> probs(w.probs().size());
  const std::size_t n1 = w.out1_size(), n2 = w.out2_size();
  for (std::size_t x = 0; x < w.input_size(); ++x)
    for (std::size_t a = 0; a < n1; ++a)
      for (std::size_t b = 0; b < n2; ++b) probs[(px[x] * n1 + p1[a]) * n2 + p2[b]] = w(x, a, b);
  return validate_channel(std::move(probs), w.shape());
}

TEST(CompactNs, Examples) {
  EXPECT_NEAR(solve_ns(one_input(), 2, 2, Objective::kJoint).value, 0.25, 1e-9);
  EXPECT_NEAR(solve_ns(one_input(), 2, 2, Objective::kSum).value, 0.5, 1e-9);
  EXPECT_NEAR(solve_ns(perfect(), 2, 2, Objective::kJoint).value, 1.0, 1e-9);
  EXPECT_NEAR(solve_ns(perfect(), 2, 2, Objective::kSum).value, 1.0, 1e-9);
}

TEST(CompactNs, ExactModeFractions) {
  const LpSolution joint = lp_solve_exact(build_ns_joint(one_input(), 2, 2));
  const LpSolution sum = lp_solve_exact(build_ns_sum(one_input(), 2, 2));
  EXPECT_EQ(joint.exact_value, "1/4");
  EXPECT_EQ(sum.exact_value, "1/2");
}

TEST(CompactNs, LayoutAndShape) {
  const CompactLayout l{3, 2, 4};
  EXPECT_EQ(l.num_vars(), 3u * (1 + 8 + 2 + 4));
  EXPECT_EQ(l.r(0, 0, 0), 3u);
  EXPECT_EQ(l.r1(0, 0), 3u + 24u);
  EXPECT_EQ(l.r2(2, 3), l.num_vars() - 1);
  Engine eng(50);
  const LpModel m = build_ns_joint(testing::random_channel(eng, 3, 2, 4), 2, 3);
  EXPECT_EQ(m.num_vars(), l.num_vars());
  EXPECT_EQ(m.objective_denominator(), 6);
}

TEST(CompactNs, DominatesUnassisted) {
  Engine eng(51);
  for (int t = 0; t < 30; ++t) {
    const ChannelTable w = testing::random_channel(eng, 3, 3, 3);
    const double ns = solve_ns(w, 2, 2, Objective::kJoint).value;
    const double ns_sum = solve_ns(w, 2, 2, Objective::kSum).value;
    EXPECT_LE(testing::brute_joint(w, 2, 2), ns + 1e-7);
    EXPECT_LE(testing::brute_sum(w, 2, 2), ns_sum + 1e-7);
    EXPECT_LE(2 * ns_sum - 1, ns + 1e-7);
    EXPECT_LE(ns, ns_sum + 1e-7);
  }
}

TEST(CompactNs, InvariantUnderRelabeling) {
  Engine eng(52);
  for (int t = 0; t < 10; ++t) {
    const ChannelTable w = testing::random_channel(eng, 4, 3, 3);
    std::vector<std::size_t> px(4), p1(3), p2(3);
    std::iota(px.begin(), px.end(), 0);
    std::iota(p1.begin(), p1.end(), 0);
    std::iota(p2.begin(), p2.end(), 0);
    std::shuffle(px.begin(), px.end(), eng);
    std::shuffle(p1.begin(), p1.end(), eng);
    std::shuffle(p2.begin(), p2.end(), eng);
    const ChannelTable v = permuted(w, px, p1, p2);
    for (Objective o : {Objective::kJoint, Objective::kSum}) {
      EXPECT_NEAR(solve_ns(w, 2, 2, o).value, solve_ns(v, 2, 2, o).value, 1e-7);
    }
  }
}

TEST(CompactNs, ExtractedSolutionSatisfiesFamilies) {
  Engine eng(53);
  for (int t = 0; t < 10; ++t) {
    const ChannelTable w = testing::random_channel(eng, 3, 2, 3);
    const NsValue v = solve_ns(w, 2, 3, Objective::kJoint);
    EXPECT_LE(v.solution.max_violation(), 1e-9);
    EXPECT_NEAR(std::accumulate(v.solution.p.begin(), v.solution.p.end(), 0.0), 6.0, 1e-9);
  }
}

TEST(CompactNs, ExtractRejectsNonOptimal) {
  LpSolution bad;
  bad.status = LpStatus::kInfeasible;
  EXPECT_THROW(extract_ns_solution(one_input(), 2, 2, bad), LpError);
}

TEST(FullNs, AgreesWithCompact) {
  Engine eng(54);
  for (int t = 0; t < 12; ++t) {
    const ChannelTable w = testing::random_channel(eng, 2, 2, 2);
    for (Objective o : {Objective::kJoint, Objective::kSum}) {
      LpOptions opt;
      opt.pivot_rule = PivotRule::kDantzig;
      const double full = lp_solve(build_ns_full(w, 2, 2, o), opt).value;
      EXPECT_NEAR(full, solve_ns(w, 2, 2, o).value, 1e-7);
    }
  }
}

TEST(FullNs, OneInputAndPerfect) {
  EXPECT_NEAR(lp_solve(build_ns_full(one_input(), 2, 2, Objective::kJoint)).value, 0.25, 1e-9);
  EXPECT_NEAR(lp_solve(build_ns_full(perfect(), 2, 2, Objective::kJoint)).value, 1.0, 1e-9);
}

TEST(FullNs, SizeCap) {
  Engine eng(55);
  const ChannelTable w = testing::random_channel(eng, 4, 4, 4);
  EXPECT_THROW(build_ns_full(w, 3, 3, Objective::kJoint, 1000), SizeCapExceeded);
  EXPECT_EQ((FullLayout{4, 4, 4, 3, 3}.num_vars()), 9u * 16u * 4u * 9u);
}

TEST(Reconstruction, ProducesValidBoxWithSameValue) {
  Engine eng(56);
  for (int t = 0; t < 10; ++t) {
    const std::size_t k1 = 2 + t % 2, k2 = 2;
    const ChannelTable w = testing::random_channel(eng, 2, 2, 3);
    const NsValue v = solve_ns(w, k1, k2, Objective::kJoint);
    const std::vector<double> box = reconstruct_full_box(v.solution);
    const FullLayout l{2, 2, 3, k1, k2};
    ASSERT_EQ(box.size(), l.num_vars());
    EXPECT_LE(full_box_violation(l, box), 1e-9);
    // Success of the box computed straight from its entries.
    double success = 0.0;
    for (std::size_t i1 = 0; i1 < k1; ++i1)
      for (std::size_t i2 = 0; i2 < k2; ++i2)
        for (std::size_t y1 = 0; y1 < 2; ++y1)
          for (std::size_t y2 = 0; y2 < 3; ++y2)
            for (std::size_t x = 0; x < 2; ++x) success += w(x, y1, y2) * box[l(i1, i2, y1, y2, x, i1, i2)];
    EXPECT_NEAR(success / static_cast<double>(k1 * k2), v.value, 1e-9);
  }
}

TEST(Reconstruction, NeedsTwoMessages) {
  const NsValue v = solve_ns(one_input(), 1, 2, Objective::kJoint);
  EXPECT_THROW(reconstruct_full_box(v.solution), BadParameters);
}

TEST(FullBoxViolation, DetectsSignaling) {
  const FullLayout l{1, 1, 2, 2, 2};
  std::vector<double> box(l.num_vars(), 0.0);
  // Output j1 copies receiver 2's output: signals y2 to receiver 1.
  for (std::size_t i1 = 0; i1 < 2; ++i1)
    for (std::size_t i2 = 0; i2 < 2; ++i2)
      for (std::size_t y2 = 0; y2 < 2; ++y2) box[l(i1, i2, 0, y2, 0, y2, 0)] = 1.0;
  EXPECT_GT(full_box_violation(l, box), 0.5);
}

TEST(DecoderBox, IdentityEncoderOnPerfectChannel) {
  const std::vector<std::size_t> enc{0, 1, 2, 3};
  EXPECT_NEAR(lp_solve(build_decoder_box_lp(perfect(), enc, 2, 2, Objective::kJoint)).value, 1.0,
              1e-9);
  EXPECT_NEAR(lp_solve(build_decoder_box_lp(perfect(), enc, 2, 2, Objective::kSum)).value, 1.0,
              1e-9);
}

TEST(DecoderBox, BoxNeverLosesToItsDeterministicDecoders) {
  Engine eng(57);
  for (int t = 0; t < 20; ++t) {
    const ChannelTable w = testing::random_channel(eng, 3, 2, 2);
    Code c{2, 2, {}, {}, {}};
    for (int i = 0; i < 4; ++i) c.encoder.push_back(testing::uniform_size(eng, 0, 2));
    for (int i = 0; i < 2; ++i) c.decoder1.push_back(testing::uniform_size(eng, 0, 1));
    for (int i = 0; i < 2; ++i) c.decoder2.push_back(testing::uniform_size(eng, 0, 1));
    EXPECT_LE(joint_success(w, c),
              lp_solve(build_decoder_box_lp(w, c.encoder, 2, 2, Objective::kJoint)).value + 1e-9);
  }
}

}  // namespace
}  // namespace bcc
