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

// Linear programs for non-signaling assisted broadcast coding.
//
// The compact programs use variables p_x, r_{x,y1,y2}, r1_{x,y1}, r2_{x,y2}
// in that block order, each block row-major. The full program uses one
// variable per box entry P(x j1 j2 | (i1 i2) y1 y2). The decoder-box program
// fixes a deterministic encoder and optimizes a two-party box d(j1 j2 | y1 y2).

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bcc/channel.hpp"
#include "bcc/lp.hpp"

namespace bcc {

enum class Objective { kJoint, kSum };

inline constexpr double kNsInvariantTolerance = 1e-7;
inline constexpr std::size_t kDefaultFullLpVarCap = 200'000;

struct CompactLayout {
  std::size_t inputs, out1, out2;

  std::size_t p(std::size_t x) const { return x; }
  std::size_t r(std::size_t x, std::size_t y1, std::size_t y2) const {
    return inputs + (x * out1 + y1) * out2 + y2;
  }
  std::size_t r1(std::size_t x, std::size_t y1) const {
    return inputs + inputs * out1 * out2 + x * out1 + y1;
  }
  std::size_t r2(std::size_t x, std::size_t y2) const {
    return inputs + inputs * out1 * out2 + inputs * out1 + x * out2 + y2;
  }
  std::size_t num_vars() const { return inputs * (1 + out1 * out2 + out1 + out2); }
};

struct FullLayout {
  std::size_t inputs, out1, out2, k1, k2;

  std::size_t operator()(std::size_t i1, std::size_t i2, std::size_t y1, std::size_t y2,
                         std::size_t x, std::size_t j1, std::size_t j2) const {
    return (((((i1 * k2 + i2) * out1 + y1) * out2 + y2) * inputs + x) * k1 + j1) * k2 + j2;
  }
  std::size_t num_vars() const { return k1 * k2 * out1 * out2 * inputs * k1 * k2; }
};

struct DecoderBoxLayout {
  std::size_t out1, out2, k1, k2;

  std::size_t operator()(std::size_t j1, std::size_t j2, std::size_t y1, std::size_t y2) const {
    return ((y1 * out2 + y2) * k1 + j1) * k2 + j2;
  }
  std::size_t num_vars() const { return out1 * out2 * k1 * k2; }
};

// Compact program for S^NS(W, k1, k2).
LpModel build_ns_joint(const ChannelTable& w, std::size_t k1, std::size_t k2);
// Compact program for S^NS_sum(W, k1, k2).
LpModel build_ns_sum(const ChannelTable& w, std::size_t k1, std::size_t k2);

// The full three-party box program. Throws SizeCapExceeded above `var_cap`.
LpModel build_ns_full(const ChannelTable& w, std::size_t k1, std::size_t k2, Objective objective,
                      std::size_t var_cap = kDefaultFullLpVarCap);

// Box d(j1 j2 | y1 y2) between the decoders for a fixed deterministic encoder
// e(i1, i2) = encoder[i1 * k2 + i2].
LpModel build_decoder_box_lp(const ChannelTable& w, const std::vector<std::size_t>& encoder,
                             std::size_t k1, std::size_t k2, Objective objective);

struct NsSolution {
  std::size_t inputs = 0, out1 = 0, out2 = 0, k1 = 0, k2 = 0;
  std::vector<double> p;   // [x]
  std::vector<double> r;   // [(x * out1 + y1) * out2 + y2]
  std::vector<double> r1;  // [x * out1 + y1]
  std::vector<double> r2;  // [x * out2 + y2]
  double value = 0.0;

  // Largest violation of the compact constraint families (0 when valid).
  double max_violation() const;
};

// Splits an optimal compact solution into typed blocks and re-checks every
// constraint. Throws InvariantViolation beyond `tolerance`, LpError if the
// solution is not optimal.
NsSolution extract_ns_solution(const ChannelTable& w, std::size_t k1, std::size_t k2,
                               const LpSolution& solution,
                               double tolerance = kNsInvariantTolerance);

// Rebuilds a full box P(x j1 j2 | (i1 i2) y1 y2) (indexed by FullLayout) from
// compact variables. Requires k1, k2 >= 2; throws BadParameters otherwise.
std::vector<double> reconstruct_full_box(const NsSolution& ns);

// Largest violation of the three non-signaling families, normalization and
// nonnegativity for a full box.
double full_box_violation(const FullLayout& layout, const std::vector<double>& box);

struct NsValue {
  double value = 0.0;
  NsSolution solution;
  std::uint64_t pivots = 0;
};

// Builds, solves and extracts the compact program. Throws LpError if the
// program is not solved to optimality.
NsValue solve_ns(const ChannelTable& w, std::size_t k1, std::size_t k2, Objective objective,
                 const LpOptions& options = {});

}  // namespace bcc
