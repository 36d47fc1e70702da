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

// Exhaustive solvers for desk-scale broadcast coding problems.
//
// Witnesses are deterministic codes; ties are broken by the lexicographically
// smallest candidate in enumeration order, independent of the worker count.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bcc/channel.hpp"
#include "bcc/graph.hpp"
#include "bcc/lp.hpp"
#include "bcc/ns_programs.hpp"

namespace bcc {

// A deterministic code for k1 x k2 messages.
struct Code {
  std::size_t k1 = 0, k2 = 0;
  std::vector<std::size_t> encoder;   // [i1 * k2 + i2] -> x
  std::vector<std::size_t> decoder1;  // y1 -> i1
  std::vector<std::size_t> decoder2;  // y2 -> i2

  bool operator==(const Code&) const = default;
};

struct SolveReport {
  // A probability, or an edge count for graph problems.
  double value = 0.0;
  std::optional<Code> code;
  // Graph problems: the two witness partitions.
  std::optional<Partition> left, right;
  // Decoder-box problems: the witness encoder only (decoders are a box).
  std::vector<std::size_t> encoder;
  std::uint64_t enumerated = 0;
};

struct SolveOptions {
  std::uint64_t cap = kDefaultEnumerationCap;
  unsigned workers = 1;
  LpOptions lp;
  // Called after each finished chunk with (candidates done, total).
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

// Throws DimensionMismatch if the code does not fit the channel.
void check_code(const ChannelTable& w, const Code& code);

double joint_success(const ChannelTable& w, const Code& code);
double sum_success(const ChannelTable& w, const Code& code);
// The sum objective evaluated from the two marginal channels only.
double sum_success(const MarginalTable& w1, const MarginalTable& w2, const Code& code);

// S(W, k1, k2): decoders enumerated, encoder chosen per message pair.
// Throws EnumerationCapExceeded if k1^|Y1| * k2^|Y2| > cap.
SolveReport solve_joint(const ChannelTable& w, std::size_t k1, std::size_t k2,
                        const SolveOptions& options = {});
// S_sum(W, k1, k2), same enumeration.
SolveReport solve_sum(const ChannelTable& w, std::size_t k1, std::size_t k2,
                      const SolveOptions& options = {});

// Densest quotient graph: max quotient edge count over P1 (k1 parts of the
// left side) and P2 (k2 parts of the right side).
SolveReport solve_dqg(const BipartiteGraph& g, std::size_t k1, std::size_t k2,
                      const SolveOptions& options = {});

// Decoders share a non-signaling box: max over deterministic encoders of
// the decoder-box program. Throws EnumerationCapExceeded if
// |X|^(k1 k2) > cap, LpError if a box program fails.
SolveReport solve_ns_dec(const ChannelTable& w, std::size_t k1, std::size_t k2,
                         Objective objective, const SolveOptions& options = {});

}  // namespace bcc
