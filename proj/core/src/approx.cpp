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

#include "bcc/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <tuple>

#include "bcc/error.hpp"
#include "bcc/parallel.hpp"
#include "bcc/random.hpp"

namespace bcc {
namespace {

void check_parts(std::size_t k, const char* what) {
  if (k == 0) throw BadParameters(std::string(what) + " must be at least 1");
}

void check_right(const BipartiteGraph& g, const Partition& p2) {
  if (p2.ground_size() != g.right_size()) {
    throw SideMismatch("right partition covers " + std::to_string(p2.ground_size()) +
                       " vertices, graph has " + std::to_string(g.right_size()));
  }
}

// Distinct left neighbors of every part of p2.
std::vector<std::vector<std::size_t>> part_neighborhoods(const BipartiteGraph& g,
                                                        const Partition& p2) {
  std::vector<std::vector<std::size_t>> out(p2.num_parts());
  for (std::size_t v = 0; v < g.right_size(); ++v) {
    auto& n = out[p2[v]];
    n.insert(n.end(), g.left_neighbors(v).begin(), g.left_neighbors(v).end());
  }
  for (auto& n : out) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
  return out;
}

// Tracks the left vertices covered by one bidder's items.
class Bundle {
 public:
  explicit Bundle(std::size_t left) : covered_(left, false) {}

  std::size_t fresh(const BipartiteGraph& g, std::size_t item) const {
    std::size_t n = 0;
    for (std::size_t u : g.left_neighbors(item)) n += covered_[u] ? 0 : 1;
    return n;
  }
  std::size_t gain(const BipartiteGraph& g, std::size_t cap, std::size_t item) const {
    return std::min(cap, count_ + fresh(g, item)) - std::min(cap, count_);
  }
  void add(const BipartiteGraph& g, std::size_t item) {
    for (std::size_t u : g.left_neighbors(item)) {
      if (!covered_[u]) {
        covered_[u] = true;
        ++count_;
      }
    }
  }

 private:
  std::vector<bool> covered_;
  std::size_t count_ = 0;
};

Partition identity_partition(std::size_t n, std::size_t parts) {
  std::vector<std::uint32_t> a(n);
  std::iota(a.begin(), a.end(), 0u);
  return Partition(std::max<std::size_t>(parts, 1), std::move(a));
}

bool better(std::size_t value, const Partition& p, std::size_t best_value, const Partition& best) {
  return value > best_value || (value == best_value && p < best);
}

// Greedy welfare is at least half the welfare optimum, which in turn bounds
// the quotient optimum.
std::size_t bound_from_greedy(const BipartiteGraph& g, std::size_t k1, std::size_t k2,
                              std::size_t greedy) {
  std::size_t right_sum = 0, left_sum = 0;
  for (std::size_t v = 0; v < g.right_size(); ++v) right_sum += std::min(k1, g.right_degree(v));
  for (std::size_t u = 0; u < g.left_size(); ++u) left_sum += std::min(k2, g.left_degree(u));
  return std::min({k1 * k2, g.num_edges(), right_sum, left_sum, 2 * greedy});
}

}  // namespace

std::size_t welfare_utility(const WelfareInstance& inst, std::span<const std::size_t> items) {
  return std::min(inst.k1, distinct_left_neighbors(inst.graph, items));
}

std::size_t welfare_value(const WelfareInstance& inst, const Partition& p2) {
  check_right(inst.graph, p2);
  std::size_t total = 0;
  for (const auto& part : p2.parts()) total += welfare_utility(inst, part);
  return total;
}

std::size_t upper_bound_right(const BipartiteGraph& g, std::size_t k1, const Partition& p2) {
  check_right(g, p2);
  std::size_t total = 0;
  for (const auto& n : part_neighborhoods(g, p2)) total += std::min(k1, n.size());
  return total;
}

Partition random_left_partition(const BipartiteGraph& g, std::size_t parts, std::uint64_t seed) {
  check_parts(parts, "number of left parts");
  Rng rng(seed);
  std::vector<std::uint32_t> a(g.left_size());
  for (auto& v : a) v = static_cast<std::uint32_t>(rng.below(parts));
  return Partition(parts, std::move(a));
}

double exact_expected_edges(const BipartiteGraph& g, std::size_t parts, const Partition& p2) {
  check_parts(parts, "number of left parts");
  check_right(g, p2);
  const double miss = 1.0 - 1.0 / static_cast<double>(parts);
  double total = 0.0;
  for (const auto& n : part_neighborhoods(g, p2)) {
    total += 1.0 - std::pow(miss, static_cast<double>(n.size()));
  }
  return static_cast<double>(parts) * total;
}

Partition derandomize_left(const BipartiteGraph& g, std::size_t parts, const Partition& p2) {
  check_parts(parts, "number of left parts");
  check_right(g, p2);
  const double miss = 1.0 - 1.0 / static_cast<double>(parts);
  const auto hoods = part_neighborhoods(g, p2);
  // Right parts adjacent to each left vertex.
  std::vector<std::vector<std::size_t>> touching(g.left_size());
  for (std::size_t j = 0; j < hoods.size(); ++j) {
    for (std::size_t u : hoods[j]) touching[u].push_back(j);
  }
  std::vector<std::size_t> remaining(hoods.size());
  for (std::size_t j = 0; j < hoods.size(); ++j) remaining[j] = hoods[j].size();
  std::vector<char> covered(hoods.size() * parts, 0);  // [right part][left part]

  std::vector<std::uint32_t> a(g.left_size(), 0);
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    // Only terms for right parts touching u change; compare those.
    std::size_t best = 0;
    double best_gain = 0.0;
    for (std::size_t i = 0; i < parts; ++i) {
      double gain = 0.0;
      for (std::size_t j : touching[u]) {
        const double before = std::pow(miss, static_cast<double>(remaining[j]));
        const double after = std::pow(miss, static_cast<double>(remaining[j] - 1));
        for (std::size_t i2 = 0; i2 < parts; ++i2) {
          if (covered[j * parts + i2]) continue;
          // Uncovered cell: probability of coverage goes from 1-before to
          // 1 (chosen part) or 1-after (other parts).
          gain += (i2 == i) ? before : before - after;
        }
      }
      if (i == 0 || gain > best_gain + 1e-12) {
        best_gain = gain;
        best = i;
      }
    }
    a[u] = static_cast<std::uint32_t>(best);
    for (std::size_t j : touching[u]) {
      covered[j * parts + best] = 1;
      --remaining[j];
    }
  }
  return Partition(parts, std::move(a));
}

Partition greedy_welfare(const WelfareInstance& inst) {
  check_parts(inst.k2, "number of bidders");
  const BipartiteGraph& g = inst.graph;
  std::vector<Bundle> bundles(inst.k2, Bundle(g.left_size()));
  std::vector<std::uint64_t> version(inst.k2, 0);
  std::vector<std::uint32_t> owner(g.right_size(), 0);
  std::vector<bool> assigned(g.right_size(), false);

  // (gain, bidder, item, bidder version); max gain, then lowest bidder and item.
  using Entry = std::tuple<std::size_t, std::size_t, std::size_t, std::uint64_t>;
  auto cmp = [](const Entry& a, const Entry& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) > std::get<1>(b);
    return std::get<2>(a) > std::get<2>(b);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  for (std::size_t b = 0; b < inst.k2; ++b) {
    for (std::size_t v = 0; v < g.right_size(); ++v) {
      heap.emplace(std::min(inst.k1, g.right_degree(v)), b, v, 0);
    }
  }
  while (!heap.empty()) {
    auto [gain, b, v, ver] = heap.top();
    heap.pop();
    if (assigned[v]) continue;
    if (ver != version[b]) {
      heap.emplace(bundles[b].gain(g, inst.k1, v), b, v, version[b]);
      continue;
    }
    if (gain == 0) break;
    bundles[b].add(g, v);
    ++version[b];
    owner[v] = static_cast<std::uint32_t>(b);
    assigned[v] = true;
  }
  return Partition(inst.k2, std::move(owner));
}

Partition greedy_welfare_ordered(const WelfareInstance& inst,
                                 const std::vector<std::size_t>& order) {
  check_parts(inst.k2, "number of bidders");
  const BipartiteGraph& g = inst.graph;
  if (order.size() != g.right_size()) throw DimensionMismatch("item order has the wrong length");
  std::vector<Bundle> bundles(inst.k2, Bundle(g.left_size()));
  std::vector<std::uint32_t> owner(g.right_size(), 0);
  for (std::size_t v : order) {
    if (v >= g.right_size()) throw DimensionMismatch("item order names an unknown item");
    std::size_t best = 0, best_gain = 0;
    for (std::size_t b = 0; b < inst.k2; ++b) {
      const std::size_t gain = bundles[b].gain(g, inst.k1, v);
      if (gain > best_gain) {
        best_gain = gain;
        best = b;
      }
    }
    bundles[best].add(g, v);
    owner[v] = static_cast<std::uint32_t>(best);
  }
  return Partition(inst.k2, std::move(owner));
}

std::size_t dqg_upper_bound(const BipartiteGraph& g, std::size_t k1, std::size_t k2) {
  check_parts(k1, "k1");
  check_parts(k2, "k2");
  const WelfareInstance inst{g, k1, k2};
  return bound_from_greedy(g, k1, k2, welfare_value(inst, greedy_welfare(inst)));
}

ApproxResult approximate_dqg(const BipartiteGraph& g, std::size_t k1, std::size_t k2,
                             const ApproxOptions& options) {
  check_parts(k1, "k1");
  check_parts(k2, "k2");
  ApproxResult r;
  r.rng_seed = options.seed;
  const WelfareInstance inst{g, k1, k2};
  const Partition global = greedy_welfare(inst);
  const std::size_t global_welfare = welfare_value(inst, global);

  // Right partition. Restart r draws its item order from stream 2r+1.
  if (k2 >= g.right_size()) {
    r.p2 = identity_partition(g.right_size(), k2);
    r.welfare = welfare_value(inst, r.p2);
  } else {
    r.p2 = global;
    r.welfare = global_welfare;
    for (std::size_t s = 0; s < options.greedy_restarts; ++s) {
      Rng rng(derive_seed(options.seed, 2 * s + 1));
      std::vector<std::size_t> order(g.right_size());
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(order);
      Partition p = greedy_welfare_ordered(inst, order);
      const std::size_t w = welfare_value(inst, p);
      if (w > r.welfare) {
        r.welfare = w;
        r.p2 = std::move(p);
      }
    }
  }
  r.expected_edges = exact_expected_edges(g, k1, r.p2);

  // Left partition. Sample s uses stream 2s.
  if (k1 >= g.left_size()) {
    r.p1 = identity_partition(g.left_size(), k1);
    r.value = quotient_edge_count(g, r.p1, r.p2);
    r.derandomized_value = r.value;
  } else {
    r.p1 = derandomize_left(g, k1, r.p2);
    r.value = quotient_edge_count(g, r.p1, r.p2);
    r.derandomized_value = r.value;
    const unsigned workers = std::max(1u, options.workers);
    std::vector<std::pair<std::size_t, Partition>> per_chunk(workers);
    for_each_chunk(options.num_samples, workers,
                   [&](unsigned chunk, std::uint64_t begin, std::uint64_t end) {
                     auto& [best_value, best] = per_chunk[chunk];
                     for (std::uint64_t s = begin; s < end; ++s) {
                       Partition p = random_left_partition(g, k1, derive_seed(options.seed, 2 * s));
                       const std::size_t v = quotient_edge_count(g, p, r.p2);
                       if (best.ground_size() != g.left_size() || better(v, p, best_value, best)) {
                         best_value = v;
                         best = std::move(p);
                       }
                     }
                   });
    for (auto& [v, p] : per_chunk) {
      if (p.ground_size() == g.left_size() && better(v, p, r.value, r.p1)) {
        r.value = v;
        r.p1 = std::move(p);
      }
    }
    r.samples_used = options.num_samples;
  }

  r.upper_bound = bound_from_greedy(g, k1, k2, global_welfare);
  r.ratio_certificate = r.upper_bound == 0 ? 1.0
                                           : static_cast<double>(r.value) /
                                                 static_cast<double>(r.upper_bound);
  if (r.value > r.upper_bound) {
    throw InvariantViolation("approximation value " + std::to_string(r.value) +
                             " exceeds its upper bound " + std::to_string(r.upper_bound));
  }
  return r;
}

DetBccResult approximate_detbcc(const DeterministicChannel& w, std::size_t k1, std::size_t k2,
                                const ApproxOptions& options) {
  const BipartiteGraph g = channel_graph(w);
  DetBccResult out;
  out.approx = approximate_dqg(g, k1, k2, options);
  const Partition& p1 = out.approx.p1;
  const Partition& p2 = out.approx.p2;
  Code code;
  code.k1 = k1;
  code.k2 = k2;
  code.decoder1.assign(p1.assignment().begin(), p1.assignment().end());
  code.decoder2.assign(p2.assignment().begin(), p2.assignment().end());
  code.encoder.assign(k1 * k2, 0);
  std::vector<bool> filled(k1 * k2, false);
  for (std::size_t x = 0; x < w.input_size(); ++x) {
    const auto [y1, y2] = w[x];
    const std::size_t cell = p1[y1] * k2 + p2[y2];
    if (!filled[cell]) {
      filled[cell] = true;
      code.encoder[cell] = x;
    }
  }
  out.code = std::move(code);
  out.probability = static_cast<double>(out.approx.value) / static_cast<double>(k1 * k2);
  return out;
}

}  // namespace bcc
