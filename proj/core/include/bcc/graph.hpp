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

// Bipartite graphs, partitions of each side, and quotient-graph counting.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace bcc {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

class BipartiteGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  BipartiteGraph() = default;
  // Duplicate edges are merged. Throws ValidationError on out-of-range ends.
  BipartiteGraph(std::size_t left_size, std::size_t right_size, std::span<const Edge> edges);

  std::size_t left_size() const { return left_.size(); }
  std::size_t right_size() const { return right_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  // Sorted ascending.
  std::span<const std::size_t> left_neighbors(std::size_t v) const { return right_[v]; }
  std::span<const std::size_t> right_neighbors(std::size_t u) const { return left_[u]; }
  std::size_t left_degree(std::size_t u) const { return left_[u].size(); }
  std::size_t right_degree(std::size_t v) const { return right_[v].size(); }

  std::vector<Edge> edges() const;

 private:
  std::vector<std::vector<std::size_t>> left_;   // left vertex -> right neighbors
  std::vector<std::vector<std::size_t>> right_;  // right vertex -> left neighbors
  std::size_t num_edges_ = 0;
};

// An assignment function ground -> [0, num_parts). Parts may be empty.
class Partition {
 public:
  Partition() = default;
  // Throws BadPartIndex if some entry is >= num_parts, or num_parts == 0
  // on a nonempty ground set.
  Partition(std::size_t num_parts, std::vector<std::uint32_t> assignment);

  static Partition singletons(std::size_t ground_size);
  static Partition trivial(std::size_t ground_size);

  std::size_t ground_size() const { return assignment_.size(); }
  std::size_t num_parts() const { return num_parts_; }
  std::uint32_t operator[](std::size_t v) const { return assignment_[v]; }
  const std::vector<std::uint32_t>& assignment() const { return assignment_; }

  std::vector<std::vector<std::size_t>> parts() const;

  bool operator==(const Partition&) const = default;
  auto operator<=>(const Partition& other) const { return assignment_ <=> other.assignment_; }

 private:
  std::size_t num_parts_ = 0;
  std::vector<std::uint32_t> assignment_;
};

enum class Side { kLeft, kRight };

// e_G(P1, P2): number of part pairs joined by at least one edge.
// Throws SideMismatch if the partitions do not cover the graph's sides.
std::size_t quotient_edge_count(const BipartiteGraph& g, const Partition& p1,
                                const Partition& p2);

// Degree of `part` (on `side`) in the quotient graph.
std::size_t quotient_degree(const BipartiteGraph& g, const Partition& p1, const Partition& p2,
                            Side side, std::size_t part);

// |union of N(v) over v in right_subset|, without building the quotient.
std::size_t distinct_left_neighbors(const BipartiteGraph& g,
                                    std::span<const std::size_t> right_subset);

// num_parts^ground_size, saturating at UINT64_MAX.
std::uint64_t partition_count(std::size_t ground_size, std::size_t num_parts);

// The index-th assignment in lexicographic order (position 0 most significant).
Partition partition_at(std::size_t ground_size, std::size_t num_parts, std::uint64_t index);

// Streams every assignment ground -> [0, num_parts) exactly once, in
// lexicographic order. Single consumer.
class PartitionEnumerator {
 public:
  // Throws EnumerationCapExceeded if num_parts^ground_size > cap.
  PartitionEnumerator(std::size_t ground_size, std::size_t num_parts,
                      std::uint64_t cap = kDefaultEnumerationCap);

  std::uint64_t total() const { return total_; }
  const std::vector<std::uint32_t>& current() const { return current_; }
  Partition partition() const { return Partition(num_parts_, current_); }
  // Advances; returns false once every assignment has been produced.
  bool next();

 private:
  std::size_t num_parts_;
  std::uint64_t total_;
  std::uint64_t produced_ = 0;
  std::vector<std::uint32_t> current_;
};

}  // namespace bcc
