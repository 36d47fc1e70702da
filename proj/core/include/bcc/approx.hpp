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

// Polynomial-time approximation of the densest quotient graph problem and
// of deterministic broadcast coding.
//
// The right partition comes from greedy welfare maximization with the
// common utility h(S) = min(k1, |N(S)|); the left partition is the better of
// a derandomized uniform assignment and seeded random draws.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bcc/channel.hpp"
#include "bcc/exact.hpp"
#include "bcc/graph.hpp"

namespace bcc {

// Right vertices are items, k2 bidders share utility min(k1, |N(S)|).
struct WelfareInstance {
  const BipartiteGraph& graph;
  std::size_t k1;
  std::size_t k2;
};

std::size_t welfare_utility(const WelfareInstance& inst, std::span<const std::size_t> items);
// Sum of utilities over the parts of `p2`.
std::size_t welfare_value(const WelfareInstance& inst, const Partition& p2);

// Sum over parts of p2 of min(k1, number of distinct left neighbors).
// Throws SideMismatch if p2 does not cover the right side.
std::size_t upper_bound_right(const BipartiteGraph& g, std::size_t k1, const Partition& p2);

// Each left vertex independently uniform over `parts` parts.
Partition random_left_partition(const BipartiteGraph& g, std::size_t parts, std::uint64_t seed);

// Expected quotient edges when the left side is assigned uniformly at random
// into `parts` parts and the right partition is p2.
double exact_expected_edges(const BipartiteGraph& g, std::size_t parts, const Partition& p2);

// Conditional expectations: left vertices in index order, each to the part
// maximizing the expected edge count given earlier choices (lowest part on
// ties). The result has at least exact_expected_edges quotient edges.
Partition derandomize_left(const BipartiteGraph& g, std::size_t parts, const Partition& p2);

// Global lazy greedy: repeatedly makes the (item, bidder) assignment with the
// largest marginal gain, lowest bidder then lowest item on ties. Items that
// never gain go to bidder 0.
Partition greedy_welfare(const WelfareInstance& inst);
// Items in the given order, each to the bidder with the largest gain.
Partition greedy_welfare_ordered(const WelfareInstance& inst, const std::vector<std::size_t>& order);

struct ApproxOptions {
  std::uint64_t seed = 0;
  std::size_t num_samples = 64;     // random left partitions
  std::size_t greedy_restarts = 8;  // random item orders besides the global greedy
  unsigned workers = 1;
};

struct ApproxResult {
  Partition p1, p2;
  std::size_t value = 0;
  std::size_t upper_bound = 0;
  double ratio_certificate = 1.0;
  std::uint64_t rng_seed = 0;
  std::size_t samples_used = 0;

  std::size_t welfare = 0;            // utility of p2
  double expected_edges = 0.0;        // over uniform left partitions, given p2
  std::size_t derandomized_value = 0;
};

// Upper bound on the optimum, independent of any chosen partition: the
// smallest of k1 k2, |E|, the two capped degree sums, and twice the global
// greedy welfare.
std::size_t dqg_upper_bound(const BipartiteGraph& g, std::size_t k1, std::size_t k2);

ApproxResult approximate_dqg(const BipartiteGraph& g, std::size_t k1, std::size_t k2,
                             const ApproxOptions& options = {});

struct DetBccResult {
  Code code;
  double probability = 0.0;
  ApproxResult approx;
};

// Runs approximate_dqg on the channel graph and turns the partitions into a
// code: decoders are the partitions, each message pair is sent by the lowest
// input landing in its cell.
DetBccResult approximate_detbcc(const DeterministicChannel& w, std::size_t k1, std::size_t k2,
                                const ApproxOptions& options = {});

}  // namespace bcc
