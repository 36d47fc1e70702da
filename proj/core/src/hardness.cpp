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

#include "bcc/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <string>

#include "bcc/error.hpp"

namespace bcc {
namespace {

double point_weight(const HardnessInstance& inst) {
  return std::pow(static_cast<double>(inst.m), 2.0 * inst.delta);
}

// Per-item weight of the spread input, m^-(1/2-d).
double spread_weight(const HardnessInstance& inst) {
  return std::pow(static_cast<double>(inst.m), inst.delta - 0.5);
}

// Sizes of S and of its intersections with the blocks, after checking range
// and dropping duplicates.
std::pair<std::size_t, std::size_t> set_stats(const HardnessInstance& inst,
                                              const std::vector<std::size_t>& items) {
  std::vector<bool> seen(inst.m, false);
  std::vector<std::size_t> per_block(inst.k1, 0);
  std::size_t size = 0;
  for (std::size_t i : items) {
    if (i >= inst.m) {
      throw DimensionMismatch("item " + std::to_string(i) + " outside [0, " +
                              std::to_string(inst.m) + ")");
    }
    if (seen[i]) continue;
    seen[i] = true;
    ++size;
    ++per_block[inst.block_of[i]];
  }
  const std::size_t best_block =
      per_block.empty() ? 0 : *std::max_element(per_block.begin(), per_block.end());
  return {size, best_block};
}

double decoy_value(const HardnessInstance& inst, std::size_t size) {
  if (size == 0) return 0.0;
  return std::max(point_weight(inst), static_cast<double>(size) * spread_weight(inst));
}

}  // namespace

std::vector<std::vector<std::size_t>> random_equipartition(std::size_t k1, Rng& rng) {
  std::vector<std::size_t> perm(k1 * k1);
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  std::vector<std::vector<std::size_t>> blocks(k1);
  for (std::size_t j = 0; j < k1; ++j) {
    blocks[j].assign(perm.begin() + static_cast<std::ptrdiff_t>(j * k1),
                     perm.begin() + static_cast<std::ptrdiff_t>((j + 1) * k1));
    std::sort(blocks[j].begin(), blocks[j].end());
  }
  return blocks;
}

HardnessInstance build_instance(std::size_t k1, double delta, std::uint64_t seed) {
  if (k1 < 2) throw BadParameters("hardness instances need k1 >= 2");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw BadParameters("delta must be positive");
  HardnessInstance inst;
  inst.k1 = k1;
  inst.m = k1 * k1;
  inst.delta = delta;
  inst.seed = seed;
  Rng rng(seed);
  inst.blocks = random_equipartition(k1, rng);
  inst.block_of.assign(inst.m, 0);
  for (std::size_t j = 0; j < k1; ++j) {
    for (std::size_t i : inst.blocks[j]) inst.block_of[i] = static_cast<std::uint32_t>(j);
  }
  const double m = static_cast<double>(inst.m);
  inst.normalization =
      1.0 / (std::pow(m, 1.0 + 2.0 * delta) + std::pow(m, 0.5 + delta) + m);
  return inst;
}

ChannelTable materialize_channel(const HardnessInstance& inst, Variant which, std::size_t cap) {
  const std::size_t n = inst.alphabet();
  const double entries = static_cast<double>(n) * static_cast<double>(n) *
                         static_cast<double>(inst.m);
  if (entries > static_cast<double>(cap)) {
    throw SizeCapExceeded("hardness channel needs " + std::to_string(entries) +
                          " entries, cap is " + std::to_string(cap));
  }
  const double c = inst.normalization;
  // First receiver-2 column, base[x][y1].
  std::vector<double> base(n * inst.m, 0.0);
  for (std::size_t x = 0; x < inst.m; ++x) base[x * inst.m + x] = c * point_weight(inst);
  for (std::size_t y1 = 0; y1 < inst.m; ++y1) base[inst.m * inst.m + y1] = c * spread_weight(inst);
  const double decoy = c / std::sqrt(static_cast<double>(inst.m));
  for (std::size_t j = 0; j < inst.k1; ++j) {
    double* row = &base[(inst.m + 1 + j) * inst.m];
    if (which == Variant::kPlanted) {
      for (std::size_t y1 : inst.blocks[j]) row[y1] = c;
    } else {
      std::fill(row, row + inst.m, decoy);
    }
  }
  std::vector<double> probs(n * inst.m * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y1 = 0; y1 < inst.m; ++y1) {
      for (std::size_t y2 = 0; y2 < n; ++y2) {
        probs[(x * inst.m + y1) * n + y2] = base[((x + y2) % n) * inst.m + y1];
      }
    }
  }
  return validate_channel(std::move(probs), {n, inst.m, n});
}

double value_oracle(const HardnessInstance& inst, Variant which,
                    const std::vector<std::size_t>& items) {
  const auto [size, best_block] = set_stats(inst, items);
  const double v = decoy_value(inst, size);
  if (which == Variant::kDecoy || size == 0) return v;
  return std::max(v, static_cast<double>(best_block));
}

double receiver1_utility(const ChannelTable& w, const std::vector<std::size_t>& items) {
  std::vector<bool> in(w.out1_size(), false);
  for (std::size_t i : items) {
    if (i >= w.out1_size()) throw DimensionMismatch("item outside receiver-1 alphabet");
    in[i] = true;
  }
  double total = 0.0;
  for (std::size_t y2 = 0; y2 < w.out2_size(); ++y2) {
    double best = 0.0;
    for (std::size_t x = 0; x < w.input_size(); ++x) {
      double s = 0.0;
      for (std::size_t y1 = 0; y1 < w.out1_size(); ++y1) {
        if (in[y1]) s += w(x, y1, y2);
      }
      best = std::max(best, s);
    }
    total += best;
  }
  return total / static_cast<double>(w.out2_size());
}

bool distinguishes(const HardnessInstance& inst, const std::vector<std::size_t>& items) {
  const auto [size, best_block] = set_stats(inst, items);
  return size > 0 && static_cast<double>(best_block) > decoy_value(inst, size);
}

double optimal_welfare(const HardnessInstance& inst, Variant which) {
  // Decoy: k1-1 bidders take one item each, the last takes the rest.
  const double rest = static_cast<double>(inst.m - (inst.k1 - 1));
  const double decoy = static_cast<double>(inst.k1 - 1) * point_weight(inst) +
                       std::max(point_weight(inst), rest * spread_weight(inst));
  if (which == Variant::kDecoy) return decoy;
  // Planted: also the blocks, one per bidder.
  return std::max(static_cast<double>(inst.m), decoy);
}

double optimal_welfare_exhaustive(const HardnessInstance& inst, Variant which,
                                  std::uint64_t cap) {
  PartitionEnumerator en(inst.m, inst.k1, cap);
  double best = 0.0;
  std::vector<std::vector<std::size_t>> parts(inst.k1);
  do {
    for (auto& p : parts) p.clear();
    const auto& a = en.current();
    for (std::size_t i = 0; i < inst.m; ++i) parts[a[i]].push_back(i);
    double total = 0.0;
    for (const auto& p : parts) total += value_oracle(inst, which, p);
    best = std::max(best, total);
  } while (en.next());
  return best;
}

double p_leak(std::size_t k1, double delta) {
  const double m = static_cast<double>(k1 * k1);
  return std::sqrt(m) * std::exp(-std::pow(m, 3.0 * delta) / 4.0);
}

QueryLog run_query_experiment(const HardnessInstance& inst, const QueryStrategy& strategy,
                              std::size_t budget) {
  QueryLog log;
  for (std::size_t q = 0; q < budget; ++q) {
    std::optional<std::vector<std::size_t>> next = strategy(log);
    if (!next) break;
    const double v = value_oracle(inst, Variant::kPlanted, *next);
    const bool split = distinguishes(inst, *next);
    log.queries.push_back({std::move(*next), v});
    if (split) {
      log.distinguished_at = q;
      break;
    }
  }
  return log;
}

QueryStrategy singleton_strategy(std::size_t m) {
  return [m](const QueryLog& log) -> std::optional<std::vector<std::size_t>> {
    if (m == 0) return std::nullopt;
    return std::vector<std::size_t>{log.queries.size() % m};
  };
}

QueryStrategy random_subset_strategy(std::size_t m, std::size_t size, std::uint64_t seed) {
  if (size > m) throw BadParameters("subset size exceeds the item count");
  auto rng = std::make_shared<Rng>(seed);
  return [m, size, rng](const QueryLog&) -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    rng->shuffle(perm);
    perm.resize(size);
    std::sort(perm.begin(), perm.end());
    return perm;
  };
}

QueryStrategy bisection_strategy(std::size_t m, std::uint64_t seed) {
  struct State {
    explicit State(std::uint64_t s) : rng(s) {}
    Rng rng;
    std::vector<std::size_t> current, first, second;
    int phase = 0;  // 0: split current, 1: first half asked, 2: both asked
    double first_value = 0.0;
  };
  auto st = std::make_shared<State>(seed);
  return [m, st](const QueryLog& log) -> std::optional<std::vector<std::size_t>> {
    if (m == 0) return std::nullopt;
    if (st->phase == 1) {
      st->first_value = log.queries.back().value;
      st->phase = 2;
      return st->second;
    }
    if (st->phase == 2) {
      st->current = log.queries.back().value > st->first_value ? st->second : st->first;
    }
    if (st->current.size() <= 1) {
      st->current.resize(m);
      std::iota(st->current.begin(), st->current.end(), 0);
      st->rng.shuffle(st->current);
    }
    const auto mid = st->current.begin() + static_cast<std::ptrdiff_t>(st->current.size() / 2);
    st->first.assign(st->current.begin(), mid);
    st->second.assign(mid, st->current.end());
    if (st->first.empty()) std::swap(st->first, st->second);
    st->phase = st->second.empty() ? 0 : 1;
    return st->first;
  };
}

QueryStrategy fixed_set_strategy(std::vector<std::size_t> items) {
  return [items = std::move(items)](const QueryLog&) -> std::optional<std::vector<std::size_t>> {
    return items;
  };
}

}  // namespace bcc
