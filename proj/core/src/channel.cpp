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

#include "bcc/channel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bcc/error.hpp"

namespace bcc {
namespace {

// Saturating a^n.
std::size_t checked_pow(std::size_t a, std::size_t n) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (a != 0 && r > std::numeric_limits<std::size_t>::max() / a) {
      return std::numeric_limits<std::size_t>::max();
    }
    r *= a;
  }
  return r;
}

std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

}  // namespace

ChannelTable validate_channel(std::vector<double> probs, ChannelShape shape, double tolerance) {
  if (shape.inputs == 0 || shape.out1 == 0 || shape.out2 == 0) {
    throw DimensionMismatch("channel alphabets must be nonempty");
  }
  if (probs.size() != shape.size()) {
    throw DimensionMismatch("channel table has " + std::to_string(probs.size()) +
                            " entries, expected " + std::to_string(shape.size()));
  }
  const std::size_t row = shape.out1 * shape.out2;
  for (std::size_t x = 0; x < shape.inputs; ++x) {
    double sum = 0.0;
    for (std::size_t k = 0; k < row; ++k) {
      const double p = probs[x * row + k];
      if (!std::isfinite(p) || p < 0.0) {
        throw NegativeProbability(x, k / shape.out2, k % shape.out2, p);
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > tolerance) throw RowNotNormalized(x, sum);
  }
  ChannelTable w;
  w.shape_ = shape;
  w.probs_ = std::move(probs);
  return w;
}

MarginalTable::MarginalTable(std::size_t inputs, std::size_t outputs, std::vector<double> probs)
    : inputs_(inputs), outputs_(outputs), probs_(std::move(probs)) {
  if (probs_.size() != inputs_ * outputs_) {
    throw DimensionMismatch("marginal table size does not match its alphabets");
  }
}

DeterministicChannel::DeterministicChannel(std::size_t out1, std::size_t out2,
                                           std::vector<Pair> pairs)
    : out1_(out1), out2_(out2), pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw DimensionMismatch("deterministic channel needs at least one input");
  for (std::size_t x = 0; x < pairs_.size(); ++x) {
    if (pairs_[x].first >= out1_ || pairs_[x].second >= out2_) {
      throw ValidationError("pair for input x=" + std::to_string(x) + " is out of range");
    }
  }
}

std::pair<MarginalTable, MarginalTable> marginals(const ChannelTable& w) {
  const auto [nx, n1, n2] = w.shape();
  std::vector<double> m1(nx * n1, 0.0);
  std::vector<double> m2(nx * n2, 0.0);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y1 = 0; y1 < n1; ++y1) {
      for (std::size_t y2 = 0; y2 < n2; ++y2) {
        const double p = w(x, y1, y2);
        m1[x * n1 + y1] += p;
        m2[x * n2 + y2] += p;
      }
    }
  }
  return {MarginalTable(nx, n1, std::move(m1)), MarginalTable(nx, n2, std::move(m2))};
}

ChannelTable tensor_power(const ChannelTable& w, std::size_t n, std::size_t cap) {
  if (n == 0) throw BadParameters("tensor power needs n >= 1");
  const auto& s = w.shape();
  const ChannelShape out{checked_pow(s.inputs, n), checked_pow(s.out1, n),
                         checked_pow(s.out2, n)};
  const std::size_t entries = checked_mul(checked_mul(out.inputs, out.out1), out.out2);
  if (entries > cap) {
    throw SizeCapExceeded("tensor power table would have " + std::to_string(entries) +
                          " entries (cap " + std::to_string(cap) + ")");
  }

  // Grow one factor at a time: C = A (x) W with A holding the leading factors.
  ChannelShape acc = s;
  std::vector<double> probs(w.probs().begin(), w.probs().end());
  for (std::size_t f = 1; f < n; ++f) {
    const ChannelShape next{acc.inputs * s.inputs, acc.out1 * s.out1, acc.out2 * s.out2};
    std::vector<double> grown(next.size(), 0.0);
    for (std::size_t xa = 0; xa < acc.inputs; ++xa) {
      for (std::size_t a1 = 0; a1 < acc.out1; ++a1) {
        for (std::size_t a2 = 0; a2 < acc.out2; ++a2) {
          const double pa = probs[(xa * acc.out1 + a1) * acc.out2 + a2];
          if (pa == 0.0) continue;
          for (std::size_t xb = 0; xb < s.inputs; ++xb) {
            const std::size_t x = xa * s.inputs + xb;
            for (std::size_t b1 = 0; b1 < s.out1; ++b1) {
              const std::size_t y1 = a1 * s.out1 + b1;
              for (std::size_t b2 = 0; b2 < s.out2; ++b2) {
                const std::size_t y2 = a2 * s.out2 + b2;
                grown[(x * next.out1 + y1) * next.out2 + y2] = pa * w(xb, b1, b2);
              }
            }
          }
        }
      }
    }
    probs = std::move(grown);
    acc = next;
  }
  // Products of normalized rows stay normalized up to rounding.
  return validate_channel(std::move(probs), acc, 1e-9 * static_cast<double>(n));
}

DeterministicChannel to_deterministic(const ChannelTable& w, double tolerance) {
  const auto& s = w.shape();
  std::vector<DeterministicChannel::Pair> pairs;
  pairs.reserve(s.inputs);
  for (std::size_t x = 0; x < s.inputs; ++x) {
    bool found = false;
    DeterministicChannel::Pair at{0, 0};
    for (std::size_t y1 = 0; y1 < s.out1; ++y1) {
      for (std::size_t y2 = 0; y2 < s.out2; ++y2) {
        const double p = w(x, y1, y2);
        if (std::abs(p - 1.0) <= tolerance) {
          if (found) throw NotDeterministic(x);
          found = true;
          at = {y1, y2};
        } else if (std::abs(p) > tolerance) {
          throw NotDeterministic(x);
        }
      }
    }
    if (!found) throw NotDeterministic(x);
    pairs.push_back(at);
  }
  return DeterministicChannel(s.out1, s.out2, std::move(pairs));
}

ChannelTable to_table(const DeterministicChannel& w) {
  const ChannelShape shape{w.input_size(), w.out1_size(), w.out2_size()};
  std::vector<double> probs(shape.size(), 0.0);
  for (std::size_t x = 0; x < shape.inputs; ++x) {
    const auto [y1, y2] = w[x];
    probs[(x * shape.out1 + y1) * shape.out2 + y2] = 1.0;
  }
  return validate_channel(std::move(probs), shape);
}

BipartiteGraph channel_graph(const DeterministicChannel& w) {
  return BipartiteGraph(w.out1_size(), w.out2_size(), w.pairs());
}

}  // namespace bcc
