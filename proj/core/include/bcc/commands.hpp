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

// The operations behind each command-line subcommand. Each returns a Report;
// the executable only parses flags, resolves paths and writes output.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>

#include "bcc/channel_io.hpp"
#include "bcc/hardness.hpp"
#include "bcc/lp.hpp"
#include "bcc/report.hpp"

namespace bcc {

enum class Quantity { kJoint, kSum, kNs, kNsSum, kNsDec, kNsDecSum, kDqg };

// Parses joint|sum|ns|ns-sum|ns-dec|ns-dec-sum|dqg|all. "all" includes dqg
// only for deterministic channels. Throws BadParameters.
std::set<Quantity> parse_quantities(const std::string& spec, bool deterministic);

inline constexpr double kDefaultCheckTolerance = 1e-7;

struct CommandOptions {
  unsigned workers = 1;
  std::uint64_t cap = kDefaultEnumerationCap;
  double check_tolerance = kDefaultCheckTolerance;
  double normalization_tolerance = kNormalizationTolerance;
  LpOptions lp;
  bool exact_lp = false;  // rational simplex for the compact programs
  // For deterministic channels: also check the rounding chain against
  // S(W, l1, l2) for every l1 <= k1, l2 <= k2.
  bool rounding_chain = false;
};

Report cmd_solve(const ChannelFile& channel, std::size_t k1, std::size_t k2,
                 const std::set<Quantity>& which, const CommandOptions& options = {});

struct ApproxCommandOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 64;
  std::size_t restarts = 8;
  bool compare_exact = false;  // also run solve_joint and report the ratio
};

// Needs a deterministic channel (dense files must be point masses).
Report cmd_approx(const ChannelFile& channel, std::size_t k1, std::size_t k2,
                  const ApproxCommandOptions& approx, const CommandOptions& options = {});

struct HardnessCommandOptions {
  std::size_t k1 = 2;
  double delta = 0.25;
  std::uint64_t seed = 0;
  std::string strategy = "random";  // singletons|random|bisection|block
  std::size_t budget = 1000;
  std::size_t subset_size = 0;      // random strategy; 0 means round(sqrt(m))
  bool materialize = false;         // also build both tables and cross-check
};

struct HardnessRun {
  Report report;
  QueryLog log;
};

HardnessRun cmd_hardness(const HardnessCommandOptions& hardness,
                         const CommandOptions& options = {});

// One JSON object per line, one line per query.
void write_query_records(const QueryLog& log, std::ostream& out);

// Quantities of the n-fold tensor power, same checks as cmd_solve.
Report cmd_tensor(const ChannelFile& channel, std::size_t n, std::size_t k1, std::size_t k2,
                  const std::set<Quantity>& which, const CommandOptions& options = {});

enum class Program { kNs, kNsSum, kNsFull, kNsFullSum };
Program parse_program(const std::string& name);

// Writes the chosen program in CPLEX LP format.
void cmd_export_lp(const ChannelFile& channel, std::size_t k1, std::size_t k2, Program program,
                   std::ostream& out);

}  // namespace bcc
