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

#include "bcc/exact.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <string>

#include "bcc/error.hpp"
#include "bcc/parallel.hpp"

namespace bcc {
namespace {

// Later candidates must beat the incumbent by more than this to replace it,
// so float noise between equal objectives cannot reorder ties.
constexpr double kTieTolerance = 1e-12;

using Digits = std::vector<std::uint32_t>;

std::vector<std::size_t> widen(const Digits& d) { return {d.begin(), d.end()}; }

// Odometer step, last position least significant. Returns false on wrap.
bool advance(Digits& d, std::size_t base) {
  for (std::size_t i = d.size(); i-- > 0;) {
    if (++d[i] < base) return true;
    d[i] = 0;
  }
  return false;
}

std::uint64_t checked_total(std::uint64_t a, std::uint64_t b, std::uint64_t cap,
                            const char* what) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t total = (b != 0 && a > kMax / b) ? kMax : a * b;
  if (total > cap) {
    throw EnumerationCapExceeded(std::string(what) + ": " +
                                 (total == kMax ? std::string("more than 2^64")
                                                : std::to_string(total)) +
                                 " candidates exceed the cap of " + std::to_string(cap));
  }
  return total;
}

void check_sizes(std::size_t k1, std::size_t k2) {
  if (k1 == 0 || k2 == 0) throw BadParameters("message set sizes must be at least 1");
}

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  bool found = false;
  Digits first, second;
};

// Enumerates first in [0,k1)^n1 (major) times second in [0,k2)^n2 (minor).
// `make` builds a per-chunk evaluator with set_first(Digits) and
// value(Digits) -> double.
template <class MakeEval>
Best enumerate_pairs(std::size_t n1, std::size_t k1, std::size_t n2, std::size_t k2,
                     const SolveOptions& options, const char* what, MakeEval make,
                     std::uint64_t* enumerated) {
  const std::uint64_t c2 = partition_count(n2, k2);
  const std::uint64_t total = checked_total(partition_count(n1, k1), c2, options.cap, what);
  const unsigned workers = std::max(1u, options.workers);
  std::vector<Best> per_chunk(workers);
  std::mutex mu;
  std::uint64_t done = 0;
  for_each_chunk(total, workers, [&](unsigned chunk, std::uint64_t begin, std::uint64_t end) {
    if (begin == end) return;
    auto eval = make();
    Digits a = partition_at(n1, k1, begin / c2).assignment();
    Digits b = partition_at(n2, k2, begin % c2).assignment();
    eval.set_first(a);
    Best best;
    for (std::uint64_t t = begin; t < end; ++t) {
      const double v = eval.value(b);
      if (!best.found || v > best.value + kTieTolerance) {
        best.value = v;
        best.found = true;
        best.first = a;
        best.second = b;
      }
      if (t + 1 == end) break;
      if (!advance(b, k2)) {
        advance(a, k1);
        eval.set_first(a);
      }
    }
    per_chunk[chunk] = std::move(best);
    if (options.progress) {
      std::lock_guard<std::mutex> lock(mu);
      done += end - begin;
      options.progress(done, total);
    }
  });
  Best out;
  for (auto& b : per_chunk) {
    if (b.found && (!out.found || b.value > out.value + kTieTolerance)) out = std::move(b);
  }
  if (enumerated != nullptr) *enumerated = total;
  return out;
}

class JointEval {
 public:
  JointEval(const ChannelTable& w, std::size_t k1, std::size_t k2)
      : w_(w), k1_(k1), k2_(k2),
        partial_(w.input_size() * k1 * w.out2_size()),
        cells_(w.input_size() * k1 * k2) {}

  void set_first(const Digits& d1) {
    std::fill(partial_.begin(), partial_.end(), 0.0);
    const std::size_t nx = w_.input_size(), n1 = w_.out1_size(), n2 = w_.out2_size();
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y1 = 0; y1 < n1; ++y1) {
        double* dst = &partial_[(x * k1_ + d1[y1]) * n2];
        for (std::size_t y2 = 0; y2 < n2; ++y2) dst[y2] += w_(x, y1, y2);
      }
    }
  }

  double value(const Digits& d2) { return fill(d2, nullptr); }

  // Per-cell best inputs for the final witness.
  double fill(const Digits& d2, std::vector<std::size_t>* encoder) {
    std::fill(cells_.begin(), cells_.end(), 0.0);
    const std::size_t nx = w_.input_size(), n2 = w_.out2_size();
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t i1 = 0; i1 < k1_; ++i1) {
        const double* src = &partial_[(x * k1_ + i1) * n2];
        double* cell = &cells_[(x * k1_ + i1) * k2_];
        for (std::size_t y2 = 0; y2 < n2; ++y2) cell[d2[y2]] += src[y2];
      }
    }
    return reduce_cells(nx, encoder);
  }

 protected:
  double reduce_cells(std::size_t nx, std::vector<std::size_t>* encoder) {
    double total = 0.0;
    if (encoder != nullptr) encoder->assign(k1_ * k2_, 0);
    for (std::size_t c = 0; c < k1_ * k2_; ++c) {
      double best = cells_[c];
      std::size_t arg = 0;
      for (std::size_t x = 1; x < nx; ++x) {
        if (cells_[x * k1_ * k2_ + c] > best) {
          best = cells_[x * k1_ * k2_ + c];
          arg = x;
        }
      }
      total += best;
      if (encoder != nullptr) (*encoder)[c] = arg;
    }
    return total / static_cast<double>(k1_ * k2_);
  }

  const ChannelTable& w_;
  std::size_t k1_, k2_;
  std::vector<double> partial_;  // [x][i1][y2]
  std::vector<double> cells_;    // [x][i1][i2]
};

class SumEval {
 public:
  SumEval(const MarginalTable& w1, const MarginalTable& w2, std::size_t k1, std::size_t k2)
      : w1_(w1), w2_(w2), k1_(k1), k2_(k2),
        first_(w1.input_size() * k1), second_(w1.input_size() * k2) {}

  void set_first(const Digits& d1) {
    std::fill(first_.begin(), first_.end(), 0.0);
    for (std::size_t x = 0; x < w1_.input_size(); ++x) {
      for (std::size_t y1 = 0; y1 < w1_.out_size(); ++y1) first_[x * k1_ + d1[y1]] += w1_(x, y1);
    }
  }

  double value(const Digits& d2) { return fill(d2, nullptr); }

  double fill(const Digits& d2, std::vector<std::size_t>* encoder) {
    const std::size_t nx = w1_.input_size();
    std::fill(second_.begin(), second_.end(), 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y2 = 0; y2 < w2_.out_size(); ++y2) second_[x * k2_ + d2[y2]] += w2_(x, y2);
    }
    if (encoder != nullptr) encoder->assign(k1_ * k2_, 0);
    double total = 0.0;
    for (std::size_t i1 = 0; i1 < k1_; ++i1) {
      for (std::size_t i2 = 0; i2 < k2_; ++i2) {
        double best = first_[i1] + second_[i2];
        std::size_t arg = 0;
        for (std::size_t x = 1; x < nx; ++x) {
          const double v = first_[x * k1_ + i1] + second_[x * k2_ + i2];
          if (v > best) {
            best = v;
            arg = x;
          }
        }
        total += best;
        if (encoder != nullptr) (*encoder)[i1 * k2_ + i2] = arg;
      }
    }
    return total / static_cast<double>(2 * k1_ * k2_);
  }

 private:
  const MarginalTable& w1_;
  const MarginalTable& w2_;
  std::size_t k1_, k2_;
  std::vector<double> first_;   // [x][i1]
  std::vector<double> second_;  // [x][i2]
};

class QuotientEval {
 public:
  QuotientEval(const BipartiteGraph& g, std::size_t k1, std::size_t k2)
      : g_(g), k1_(k1), k2_(k2), seen_(k1 * k2, 0) {}

  void set_first(const Digits& p1) { p1_ = &p1; }

  double value(const Digits& p2) {
    ++stamp_;
    if (stamp_ == 0) {
      std::fill(seen_.begin(), seen_.end(), 0);
      stamp_ = 1;
    }
    std::size_t count = 0;
    for (std::size_t u = 0; u < g_.left_size(); ++u) {
      const std::size_t row = (*p1_)[u] * k2_;
      for (std::size_t v : g_.right_neighbors(u)) {
        std::uint32_t& s = seen_[row + p2[v]];
        if (s != stamp_) {
          s = stamp_;
          ++count;
        }
      }
    }
    return static_cast<double>(count);
  }

 private:
  const BipartiteGraph& g_;
  std::size_t k1_, k2_;
  const Digits* p1_ = nullptr;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
};

}  // namespace

void check_code(const ChannelTable& w, const Code& code) {
  if (code.k1 == 0 || code.k2 == 0) throw DimensionMismatch("code has an empty message set");
  if (code.encoder.size() != code.k1 * code.k2) {
    throw DimensionMismatch("encoder has " + std::to_string(code.encoder.size()) +
                            " entries, expected " + std::to_string(code.k1 * code.k2));
  }
  if (code.decoder1.size() != w.out1_size() || code.decoder2.size() != w.out2_size()) {
    throw DimensionMismatch("decoder sizes do not match the channel outputs");
  }
  for (std::size_t x : code.encoder) {
    if (x >= w.input_size()) throw DimensionMismatch("encoder maps to input " + std::to_string(x));
  }
  for (std::size_t i : code.decoder1) {
    if (i >= code.k1) throw DimensionMismatch("decoder1 outputs message " + std::to_string(i));
  }
  for (std::size_t i : code.decoder2) {
    if (i >= code.k2) throw DimensionMismatch("decoder2 outputs message " + std::to_string(i));
  }
}

double joint_success(const ChannelTable& w, const Code& code) {
  check_code(w, code);
  double total = 0.0;
  for (std::size_t i1 = 0; i1 < code.k1; ++i1) {
    for (std::size_t i2 = 0; i2 < code.k2; ++i2) {
      const std::size_t x = code.encoder[i1 * code.k2 + i2];
      for (std::size_t y1 = 0; y1 < w.out1_size(); ++y1) {
        if (code.decoder1[y1] != i1) continue;
        for (std::size_t y2 = 0; y2 < w.out2_size(); ++y2) {
          if (code.decoder2[y2] == i2) total += w(x, y1, y2);
        }
      }
    }
  }
  return total / static_cast<double>(code.k1 * code.k2);
}

double sum_success(const ChannelTable& w, const Code& code) {
  check_code(w, code);
  double total = 0.0;
  for (std::size_t i1 = 0; i1 < code.k1; ++i1) {
    for (std::size_t i2 = 0; i2 < code.k2; ++i2) {
      const std::size_t x = code.encoder[i1 * code.k2 + i2];
      for (std::size_t y1 = 0; y1 < w.out1_size(); ++y1) {
        for (std::size_t y2 = 0; y2 < w.out2_size(); ++y2) {
          const double hits = (code.decoder1[y1] == i1 ? 1.0 : 0.0) +
                              (code.decoder2[y2] == i2 ? 1.0 : 0.0);
          total += w(x, y1, y2) * hits;
        }
      }
    }
  }
  return total / static_cast<double>(2 * code.k1 * code.k2);
}

double sum_success(const MarginalTable& w1, const MarginalTable& w2, const Code& code) {
  if (w1.input_size() != w2.input_size()) throw DimensionMismatch("marginals disagree on |X|");
  if (code.decoder1.size() != w1.out_size() || code.decoder2.size() != w2.out_size() ||
      code.encoder.size() != code.k1 * code.k2) {
    throw DimensionMismatch("code does not match the marginal channels");
  }
  double total = 0.0;
  for (std::size_t i1 = 0; i1 < code.k1; ++i1) {
    for (std::size_t i2 = 0; i2 < code.k2; ++i2) {
      const std::size_t x = code.encoder[i1 * code.k2 + i2];
      if (x >= w1.input_size()) throw DimensionMismatch("encoder maps to input " + std::to_string(x));
      for (std::size_t y1 = 0; y1 < w1.out_size(); ++y1) {
        if (code.decoder1[y1] == i1) total += w1(x, y1);
      }
      for (std::size_t y2 = 0; y2 < w2.out_size(); ++y2) {
        if (code.decoder2[y2] == i2) total += w2(x, y2);
      }
    }
  }
  return total / static_cast<double>(2 * code.k1 * code.k2);
}

SolveReport solve_joint(const ChannelTable& w, std::size_t k1, std::size_t k2,
                        const SolveOptions& options) {
  check_sizes(k1, k2);
  SolveReport report;
  Best best = enumerate_pairs(
      w.out1_size(), k1, w.out2_size(), k2, options, "joint decoder enumeration",
      [&] { return JointEval(w, k1, k2); }, &report.enumerated);
  JointEval eval(w, k1, k2);
  eval.set_first(best.first);
  Code code{k1, k2, {}, widen(best.first), widen(best.second)};
  report.value = eval.fill(best.second, &code.encoder);
  report.code = std::move(code);
  return report;
}

SolveReport solve_sum(const ChannelTable& w, std::size_t k1, std::size_t k2,
                      const SolveOptions& options) {
  check_sizes(k1, k2);
  const auto [w1, w2] = marginals(w);
  SolveReport report;
  Best best = enumerate_pairs(
      w.out1_size(), k1, w.out2_size(), k2, options, "sum decoder enumeration",
      [&] { return SumEval(w1, w2, k1, k2); }, &report.enumerated);
  SumEval eval(w1, w2, k1, k2);
  eval.set_first(best.first);
  Code code{k1, k2, {}, widen(best.first), widen(best.second)};
  report.value = eval.fill(best.second, &code.encoder);
  report.code = std::move(code);
  return report;
}

SolveReport solve_dqg(const BipartiteGraph& g, std::size_t k1, std::size_t k2,
                      const SolveOptions& options) {
  check_sizes(k1, k2);
  SolveReport report;
  Best best = enumerate_pairs(
      g.left_size(), k1, g.right_size(), k2, options, "partition pair enumeration",
      [&] { return QuotientEval(g, k1, k2); }, &report.enumerated);
  report.left = Partition(k1, best.first);
  report.right = Partition(k2, best.second);
  report.value = static_cast<double>(quotient_edge_count(g, *report.left, *report.right));
  return report;
}

SolveReport solve_ns_dec(const ChannelTable& w, std::size_t k1, std::size_t k2,
                         Objective objective, const SolveOptions& options) {
  check_sizes(k1, k2);
  const std::size_t cells = k1 * k2;
  const std::uint64_t total =
      checked_total(partition_count(cells, w.input_size()), 1, options.cap, "encoder enumeration");
  const unsigned workers = std::max(1u, options.workers);
  struct ChunkBest {
    bool found = false;
    double value = 0.0;
    std::vector<std::size_t> encoder;
  };
  std::vector<ChunkBest> per_chunk(workers);
  std::mutex mu;
  std::uint64_t done = 0;
  for_each_chunk(total, workers, [&](unsigned chunk, std::uint64_t begin, std::uint64_t end) {
    if (begin == end) return;
    Digits e = partition_at(cells, w.input_size(), begin).assignment();
    ChunkBest best;
    for (std::uint64_t t = begin; t < end; ++t) {
      const std::vector<std::size_t> encoder = widen(e);
      const LpSolution sol = lp_solve(build_decoder_box_lp(w, encoder, k1, k2, objective), options.lp);
      if (!sol.optimal()) {
        throw LpError(std::string("decoder-box program not optimal: ") + to_string(sol.status));
      }
      if (!best.found || sol.value > best.value + kTieTolerance) {
        best = {true, sol.value, encoder};
      }
      advance(e, w.input_size());
    }
    per_chunk[chunk] = std::move(best);
    if (options.progress) {
      std::lock_guard<std::mutex> lock(mu);
      done += end - begin;
      options.progress(done, total);
    }
  });
  SolveReport report;
  bool found = false;
  for (auto& b : per_chunk) {
    if (b.found && (!found || b.value > report.value + kTieTolerance)) {
      found = true;
      report.value = b.value;
      report.encoder = std::move(b.encoder);
    }
  }
  report.enumerated = total;
  return report;
}

}  // namespace bcc
