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

// Random instance generators for tests. They draw from std::mt19937_64
// directly so that test inputs do not depend on the library's own RNG.

#pragma once

#include <cstddef>
#include <random>

#include "bcc/channel.hpp"
#include "bcc/graph.hpp"
#include "bcc/lp.hpp"

namespace bcc::testing {

using Engine = std::mt19937_64;

std::size_t uniform_size(Engine& eng, std::size_t lo, std::size_t hi);

// Each entry is zero with probability `zero_rate`, otherwise uniform; rows
// are then normalized. Rows that come out all-zero get one random point mass.
ChannelTable random_channel(Engine& eng, std::size_t inputs, std::size_t out1, std::size_t out2,
                            double zero_rate = 0.3);

// Same, with row entries that are multiples of 1/denominator.
ChannelTable random_rational_channel(Engine& eng, std::size_t inputs, std::size_t out1,
                                     std::size_t out2, int denominator);

DeterministicChannel random_deterministic(Engine& eng, std::size_t inputs, std::size_t out1,
                                          std::size_t out2);

BipartiteGraph random_graph(Engine& eng, std::size_t left, std::size_t right, double density);

Partition random_partition(Engine& eng, std::size_t ground, std::size_t parts);

// max c.x subject to a few random rows plus sum(x) <= bound, x >= 0. Always
// bounded; may be infeasible.
LpModel random_bounded_lp(Engine& eng, std::size_t vars, std::size_t rows);

}  // namespace bcc::testing
