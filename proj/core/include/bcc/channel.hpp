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

// Broadcast channels W(y1 y2 | x) over finite index alphabets.
//
// Alphabets are the index sets 0..size-1. Tables are stored dense and
// row-major over (x, y1, y2). All types are immutable once constructed.

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "bcc/graph.hpp"

namespace bcc {

inline constexpr double kNormalizationTolerance = 1e-9;
inline constexpr double kDeterministicTolerance = 1e-12;
inline constexpr std::size_t kDefaultTensorCap = 100'000'000;

struct ChannelShape {
  std::size_t inputs = 0;
  std::size_t out1 = 0;
  std::size_t out2 = 0;

  std::size_t size() const { return inputs * out1 * out2; }
  bool operator==(const ChannelShape&) const = default;
};

class ChannelTable {
 public:
  ChannelTable() = default;

  const ChannelShape& shape() const { return shape_; }
  std::size_t input_size() const { return shape_.inputs; }
  std::size_t out1_size() const { return shape_.out1; }
  std::size_t out2_size() const { return shape_.out2; }

  double operator()(std::size_t x, std::size_t y1, std::size_t y2) const {
    return probs_[(x * shape_.out1 + y1) * shape_.out2 + y2];
  }
  // Row W(. . | x) as a flat |Y1|*|Y2| span.
  std::span<const double> row(std::size_t x) const {
    return {probs_.data() + x * shape_.out1 * shape_.out2, shape_.out1 * shape_.out2};
  }
  std::span<const double> probs() const { return probs_; }

 private:
  friend ChannelTable validate_channel(std::vector<double>, ChannelShape, double);
  ChannelShape shape_;
  std::vector<double> probs_;
};

// Marginal channel W_b(y | x), row-major over (x, y).
class MarginalTable {
 public:
  MarginalTable(std::size_t inputs, std::size_t outputs, std::vector<double> probs);

  std::size_t input_size() const { return inputs_; }
  std::size_t out_size() const { return outputs_; }
  double operator()(std::size_t x, std::size_t y) const { return probs_[x * outputs_ + y]; }
  std::span<const double> probs() const { return probs_; }

 private:
  std::size_t inputs_;
  std::size_t outputs_;
  std::vector<double> probs_;
};

// A channel where every input x produces the single pair (W1(x), W2(x)).
class DeterministicChannel {
 public:
  using Pair = std::pair<std::size_t, std::size_t>;

  // Throws ValidationError if a pair lies outside [0,out1) x [0,out2).
  DeterministicChannel(std::size_t out1, std::size_t out2, std::vector<Pair> pairs);

  std::size_t input_size() const { return pairs_.size(); }
  std::size_t out1_size() const { return out1_; }
  std::size_t out2_size() const { return out2_; }
  const Pair& operator[](std::size_t x) const { return pairs_[x]; }
  const std::vector<Pair>& pairs() const { return pairs_; }

 private:
  std::size_t out1_;
  std::size_t out2_;
  std::vector<Pair> pairs_;
};

// Checks shape, nonnegativity and per-input normalization.
// Throws DimensionMismatch, NegativeProbability or RowNotNormalized.
ChannelTable validate_channel(std::vector<double> probs, ChannelShape shape,
                              double tolerance = kNormalizationTolerance);

std::pair<MarginalTable, MarginalTable> marginals(const ChannelTable& w);

// W^{(x)n}. Composite indices are row-major over the n factors with factor 0
// most significant. Throws SizeCapExceeded if the table would exceed `cap`
// entries.
ChannelTable tensor_power(const ChannelTable& w, std::size_t n,
                          std::size_t cap = kDefaultTensorCap);

// Throws NotDeterministic(x) for the first row that is not a point mass.
DeterministicChannel to_deterministic(const ChannelTable& w,
                                      double tolerance = kDeterministicTolerance);

ChannelTable to_table(const DeterministicChannel& w);

// G_W: left side Y1, right side Y2, edge (y1,y2) iff some input emits it.
BipartiteGraph channel_graph(const DeterministicChannel& w);

}  // namespace bcc
