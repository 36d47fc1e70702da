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

#include "bcc/graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "bcc/error.hpp"

namespace bcc {

BipartiteGraph::BipartiteGraph(std::size_t left_size, std::size_t right_size,
                               std::span<const Edge> edges)
    : left_(left_size), right_(right_size) {
  for (const auto& [u, v] : edges) {
    if (u >= left_size || v >= right_size) {
      throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") out of range");
    }
    left_[u].push_back(v);
  }
  for (std::size_t u = 0; u < left_size; ++u) {
    auto& adj = left_[u];
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    num_edges_ += adj.size();
    for (std::size_t v : adj) right_[v].push_back(u);  // stays sorted: u ascends
  }
}

std::vector<BipartiteGraph::Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (std::size_t u = 0; u < left_.size(); ++u) {
    for (std::size_t v : left_[u]) out.emplace_back(u, v);
  }
  return out;
}

Partition::Partition(std::size_t num_parts, std::vector<std::uint32_t> assignment)
    : num_parts_(num_parts), assignment_(std::move(assignment)) {
  for (std::size_t v = 0; v < assignment_.size(); ++v) {
    if (assignment_[v] >= num_parts_) {
      throw BadPartIndex("element " + std::to_string(v) + " assigned to part " +
                         std::to_string(assignment_[v]) + " of " + std::to_string(num_parts_));
    }
  }
}

Partition Partition::singletons(std::size_t ground_size) {
  std::vector<std::uint32_t> a(ground_size);
  for (std::size_t v = 0; v < ground_size; ++v) a[v] = static_cast<std::uint32_t>(v);
  return Partition(std::max<std::size_t>(ground_size, 1), std::move(a));
}

Partition Partition::trivial(std::size_t ground_size) {
  return Partition(1, std::vector<std::uint32_t>(ground_size, 0));
}

std::vector<std::vector<std::size_t>> Partition::parts() const {
  std::vector<std::vector<std::size_t>> out(num_parts_);
  for (std::size_t v = 0; v < assignment_.size(); ++v) out[assignment_[v]].push_back(v);
  return out;
}

namespace {

void check_sides(const BipartiteGraph& g, const Partition& p1, const Partition& p2) {
  if (p1.ground_size() != g.left_size() || p2.ground_size() != g.right_size()) {
    throw SideMismatch("partition ground sizes (" + std::to_string(p1.ground_size()) + "," +
                       std::to_string(p2.ground_size()) + ") do not match graph sides (" +
                       std::to_string(g.left_size()) + "," + std::to_string(g.right_size()) +
                       ")");
  }
}

}  // namespace

std::size_t quotient_edge_count(const BipartiteGraph& g, const Partition& p1,
                                const Partition& p2) {
  check_sides(g, p1, p2);
  const std::size_t k2 = p2.num_parts();
  std::vector<char> seen(p1.num_parts() * k2, 0);
  std::size_t count = 0;
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    const std::size_t row = p1[u] * k2;
    for (std::size_t v : g.right_neighbors(u)) {
      char& cell = seen[row + p2[v]];
      if (!cell) {
        cell = 1;
        ++count;
      }
    }
  }
  return count;
}

std::size_t quotient_degree(const BipartiteGraph& g, const Partition& p1, const Partition& p2,
                            Side side, std::size_t part) {
  check_sides(g, p1, p2);
  const Partition& own = side == Side::kLeft ? p1 : p2;
  const Partition& other = side == Side::kLeft ? p2 : p1;
  if (part >= own.num_parts()) {
    throw BadPartIndex("part " + std::to_string(part) + " out of range");
  }
  std::vector<char> seen(other.num_parts(), 0);
  std::size_t degree = 0;
  const std::size_t n = side == Side::kLeft ? g.left_size() : g.right_size();
  for (std::size_t a = 0; a < n; ++a) {
    if (own[a] != part) continue;
    const auto nbrs = side == Side::kLeft ? g.right_neighbors(a) : g.left_neighbors(a);
    for (std::size_t b : nbrs) {
      if (!seen[other[b]]) {
        seen[other[b]] = 1;
        ++degree;
      }
    }
  }
  return degree;
}

std::size_t distinct_left_neighbors(const BipartiteGraph& g,
                                    std::span<const std::size_t> right_subset) {
  std::vector<char> seen(g.left_size(), 0);
  std::size_t count = 0;
  for (std::size_t v : right_subset) {
    if (v >= g.right_size()) throw ValidationError("right vertex out of range");
    for (std::size_t u : g.left_neighbors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
      }
    }
  }
  return count;
}

std::uint64_t partition_count(std::size_t ground_size, std::size_t num_parts) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < ground_size; ++i) {
    if (num_parts != 0 && r > std::numeric_limits<std::uint64_t>::max() / num_parts) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r *= num_parts;
  }
  return r;
}

Partition partition_at(std::size_t ground_size, std::size_t num_parts, std::uint64_t index) {
  std::vector<std::uint32_t> a(ground_size, 0);
  for (std::size_t i = ground_size; i-- > 0;) {
    a[i] = static_cast<std::uint32_t>(index % num_parts);
    index /= num_parts;
  }
  return Partition(num_parts, std::move(a));
}

PartitionEnumerator::PartitionEnumerator(std::size_t ground_size, std::size_t num_parts,
                                         std::uint64_t cap)
    : num_parts_(num_parts),
      total_(partition_count(ground_size, num_parts)),
      current_(ground_size, 0) {
  if (num_parts == 0) throw BadParameters("partitions need at least one part");
  if (total_ > cap) {
    throw EnumerationCapExceeded(std::to_string(num_parts) + "^" + std::to_string(ground_size) +
                                 " partitions exceed the enumeration cap of " +
                                 std::to_string(cap));
  }
}

bool PartitionEnumerator::next() {
  if (++produced_ >= total_) return false;
  for (std::size_t i = current_.size(); i-- > 0;) {
    if (++current_[i] < num_parts_) return true;
    current_[i] = 0;
  }
  return false;
}

}  // namespace bcc
