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

// A pair of broadcast channels whose first-receiver utilities agree on
// almost every subset of outputs, used to probe value-query algorithms.
//
// Items are the m = k1^2 outputs of receiver 1, hidden among k1 random
// blocks of k1 items each. Inputs and receiver-2 outputs both range over
// m + k1 + 1 symbols: m "point" inputs, one "spread" input and k1 "block"
// inputs. Every receiver-2 column is the first column with inputs rotated,
// t_s(x) = (x + s) mod (m + k1 + 1) on 0-based indices. The decoy channel
// replaces each block input by a uniform spread of weight m^-1/2.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bcc/channel.hpp"
#include "bcc/graph.hpp"
#include "bcc/random.hpp"

namespace bcc {

enum class Variant { kPlanted, kDecoy };

struct HardnessInstance {
  std::size_t k1 = 0;
  std::size_t m = 0;
  double delta = 0.0;
  std::vector<std::vector<std::size_t>> blocks;  // k1 sorted blocks of k1 items
  std::vector<std::uint32_t> block_of;           // item -> block
  double normalization = 0.0;                    // C = 1/(m^(1+2d) + m^(1/2+d) + m)
  std::uint64_t seed = 0;

  std::size_t alphabet() const { return m + k1 + 1; }
};

// Uniformly random equipartition of [m] into k1 blocks of size k1.
std::vector<std::vector<std::size_t>> random_equipartition(std::size_t k1, Rng& rng);

// Throws BadParameters unless k1 >= 2 and delta > 0.
HardnessInstance build_instance(std::size_t k1, double delta, std::uint64_t seed);

// The full table, |X| = |Y2| = m + k1 + 1, |Y1| = m. Throws SizeCapExceeded
// above `cap` entries.
ChannelTable materialize_channel(const HardnessInstance& inst, Variant which,
                                 std::size_t cap = kDefaultTensorCap);

// Utility of item set S divided by C: max(m^2d, |S| / m^(1/2-d), max_j |T_j n S|)
// for the planted channel, without the block term for the decoy; 0 for the
// empty set. Throws DimensionMismatch on out-of-range items.
double value_oracle(const HardnessInstance& inst, Variant which,
                    const std::vector<std::size_t>& items);

// Receiver-1 utility straight from a table:
// (1/|Y2|) sum_y2 max_x sum_{y1 in S} W(y1 y2 | x).
double receiver1_utility(const ChannelTable& w, const std::vector<std::size_t>& items);

// True iff the planted and decoy oracles disagree on S.
bool distinguishes(const HardnessInstance& inst, const std::vector<std::size_t>& items);

// Best total utility (in oracle units) over assignments of the m items to
// k1 bidders. Closed form, or exhaustive over k1^m assignments under `cap`.
double optimal_welfare(const HardnessInstance& inst, Variant which);
double optimal_welfare_exhaustive(const HardnessInstance& inst, Variant which,
                                  std::uint64_t cap = kDefaultEnumerationCap);

// m^(1/2) exp(-m^(3d) / 4): per-query bound on telling the channels apart.
double p_leak(std::size_t k1, double delta);

struct QueryRecord {
  std::vector<std::size_t> items;
  double value = 0.0;
};

struct QueryLog {
  std::vector<QueryRecord> queries;
  std::optional<std::size_t> distinguished_at;
};

// A query strategy sees only its own past answers. Returning nullopt ends
// the experiment early.
using QueryStrategy =
    std::function<std::optional<std::vector<std::size_t>>(const QueryLog& log)>;

// Answers from the planted channel until a query separates it from the
// decoy or `budget` queries have been made.
QueryLog run_query_experiment(const HardnessInstance& inst, const QueryStrategy& strategy,
                              std::size_t budget);

// Reference strategies over m items.
QueryStrategy singleton_strategy(std::size_t m);
QueryStrategy random_subset_strategy(std::size_t m, std::size_t size, std::uint64_t seed);
// Halves the current set and keeps the half with the larger answer; starts
// over on a fresh random permutation when a single item remains.
QueryStrategy bisection_strategy(std::size_t m, std::uint64_t seed);
// Queries a fixed set forever (for tests with planted knowledge).
QueryStrategy fixed_set_strategy(std::vector<std::size_t> items);

}  // namespace bcc
