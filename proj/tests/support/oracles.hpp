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

// Slow reference implementations used as independent oracles. None of them
// call into the solver code paths they check.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bcc/channel.hpp"
#include "bcc/graph.hpp"
#include "bcc/lp.hpp"

namespace bcc::testing {

// Enumerates every encoder and both decoders. Only for tiny instances.
double brute_joint(const ChannelTable& w, std::size_t k1, std::size_t k2);
double brute_sum(const ChannelTable& w, std::size_t k1, std::size_t k2);

// Every (unrestricted) left and right assignment, quotient edges via a set.
std::size_t brute_dqg(const BipartiteGraph& g, std::size_t k1, std::size_t k2);

// Naive quotient edge count.
std::size_t naive_quotient_edges(const BipartiteGraph& g, const std::vector<std::uint32_t>& left,
                                 const std::vector<std::uint32_t>& right);

// Best sum_b min(k1, |N(S_b)|) over all assignments of right vertices into
// k2 bidders.
std::size_t brute_welfare(const BipartiteGraph& g, std::size_t k1, std::size_t k2);

// Mean quotient edge count over every assignment of the left side into
// `parts` parts, right side fixed.
double mean_quotient_edges(const BipartiteGraph& g, std::size_t parts, const Partition& right);

// Optimum of a bounded LP by enumerating basic solutions; nullopt when
// infeasible. Only for a handful of variables.
std::optional<double> vertex_enumeration(const LpModel& model, double tol = 1e-9);

// E[min(k, Poisson(mean))] = k - sum_{n<k} (k - n) P(N = n).
double capped_poisson_mean_finite(std::size_t k, double mean);

}  // namespace bcc::testing
