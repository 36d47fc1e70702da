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

// bcc: broadcast channel coding solvers from the command line.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "bcc/commands.hpp"
#include "bcc/error.hpp"

namespace {

enum ExitCode { kOk = 0, kOther = 1, kValidation = 2, kCap = 3, kCheckFailed = 4 };

struct Output {
  std::string path;
  bool timings = false;
  bool table = false;
  bool verify = false;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const auto resolved = bcc::resolve_path(path);
  std::ofstream out(resolved);
  if (!out) throw bcc::Error("cannot write " + resolved.string());
  out << text;
}

int emit(const bcc::Report& r, const Output& o) {
  write_text(o.path, o.table ? r.to_csv() : r.to_text(o.timings));
  for (const bcc::Check* c : r.failures()) {
    std::cerr << "check failed: " << c->name << " (" << c->claim << "): " << c->lhs_name << " = "
              << c->lhs << " > " << c->rhs_name << " = " << c->rhs << "\n";
  }
  return o.verify && !r.all_pass() ? kCheckFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Broadcast channel coding: exact, non-signaling and approximate solvers"};
  app.require_subcommand(1);
  app.fallthrough();

  bcc::CommandOptions opts;
  Output out;
  std::string pivot = "bland";
  app.add_option("--workers", opts.workers, "Worker threads for enumeration")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--cap", opts.cap, "Enumeration cap (candidates)");
  app.add_option("--check-tol", opts.check_tolerance, "Tolerance for report checks");
  app.add_option("--norm-tol", opts.normalization_tolerance, "Row-sum tolerance for channels");
  app.add_option("--pivot", pivot, "LP pivot rule")
      ->check(CLI::IsMember({"bland", "dantzig"}));
  app.add_option("--max-pivots", opts.lp.max_pivots, "LP pivot limit");
  app.add_flag("--timings", out.timings, "Include wall-clock timings in the report");
  app.add_option("--out", out.path, "Report path (default stdout)");
  app.add_flag("--table", out.table, "Emit the flat CSV table instead of JSON");
  app.add_flag("--verify", out.verify, "Exit with status 4 if any check fails");

  std::string channel_path, which = "all";
  std::size_t k1 = 2, k2 = 2;

  auto* solve = app.add_subcommand("solve", "Compute success probabilities and run checks");
  solve->add_option("channel", channel_path, "Channel file")->required();
  solve->add_option("--k1", k1, "Messages for receiver 1")->check(CLI::PositiveNumber);
  solve->add_option("--k2", k2, "Messages for receiver 2")->check(CLI::PositiveNumber);
  solve->add_option("--which", which, "joint,sum,ns,ns-sum,ns-dec,ns-dec-sum,dqg or all");
  solve->add_flag("--exact", opts.exact_lp, "Rational simplex for the compact programs");
  solve->add_flag("--rounding-chain", opts.rounding_chain,
                  "Deterministic channels: compare against S at every smaller message pair");

  bcc::ApproxCommandOptions aopts;
  auto* approx = app.add_subcommand("approx", "Approximate a deterministic channel code");
  approx->add_option("channel", channel_path, "Channel file")->required();
  approx->add_option("--k1", k1)->check(CLI::PositiveNumber);
  approx->add_option("--k2", k2)->check(CLI::PositiveNumber);
  approx->add_option("--seed", aopts.seed);
  approx->add_option("--samples", aopts.samples, "Random left partitions to draw");
  approx->add_option("--restarts", aopts.restarts, "Greedy restarts on shuffled orders");
  approx->add_flag("--compare-exact", aopts.compare_exact, "Also solve exactly and report ratio");

  bcc::HardnessCommandOptions hopts;
  std::string records;
  auto* hard = app.add_subcommand("hardness", "Value-query experiment on the two-instance family");
  hard->add_option("--k1", hopts.k1)->check(CLI::Range(std::size_t{2}, std::size_t{16}));
  hard->add_option("--delta", hopts.delta)->check(CLI::Range(0.0, 0.5));
  hard->add_option("--seed", hopts.seed);
  hard->add_option("--strategy", hopts.strategy)
      ->check(CLI::IsMember({"singletons", "random", "bisection", "block"}));
  hard->add_option("--budget", hopts.budget, "Maximum number of queries");
  hard->add_option("--subset-size", hopts.subset_size, "Random strategy subset size");
  hard->add_flag("--materialize", hopts.materialize, "Build both channels and cross-check");
  hard->add_option("--records", records, "Write one JSON line per query to this path");

  std::size_t blocklength = 2;
  auto* tensor = app.add_subcommand("tensor", "Solve on the n-fold tensor power");
  tensor->add_option("channel", channel_path, "Channel file")->required();
  tensor->add_option("--n", blocklength, "Blocklength")->check(CLI::PositiveNumber);
  tensor->add_option("--k1", k1)->check(CLI::PositiveNumber);
  tensor->add_option("--k2", k2)->check(CLI::PositiveNumber);
  tensor->add_option("--which", which);

  std::string program = "ns";
  auto* export_lp = app.add_subcommand("export-lp", "Write a program in CPLEX LP format");
  export_lp->add_option("channel", channel_path, "Channel file")->required();
  export_lp->add_option("--k1", k1)->check(CLI::PositiveNumber);
  export_lp->add_option("--k2", k2)->check(CLI::PositiveNumber);
  export_lp->add_option("--program", program)
      ->check(CLI::IsMember({"ns", "ns-sum", "ns-full", "ns-full-sum"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }
  opts.lp.pivot_rule = pivot == "dantzig" ? bcc::PivotRule::kDantzig : bcc::PivotRule::kBland;

  try {
    if (*solve || *tensor) {
      const auto channel = bcc::load_channel(channel_path, opts.normalization_tolerance);
      const auto set = bcc::parse_quantities(which, channel.deterministic.has_value());
      return emit(*solve ? bcc::cmd_solve(channel, k1, k2, set, opts)
                         : bcc::cmd_tensor(channel, blocklength, k1, k2, set, opts),
                  out);
    }
    if (*approx) {
      const auto channel = bcc::load_channel(channel_path, opts.normalization_tolerance);
      return emit(bcc::cmd_approx(channel, k1, k2, aopts, opts), out);
    }
    if (*hard) {
      const bcc::HardnessRun run = bcc::cmd_hardness(hopts, opts);
      if (!records.empty()) {
        std::ostringstream lines;
        bcc::write_query_records(run.log, lines);
        write_text(records, lines.str());
      }
      return emit(run.report, out);
    }
    if (*export_lp) {
      const auto channel = bcc::load_channel(channel_path, opts.normalization_tolerance);
      std::ostringstream text;
      bcc::cmd_export_lp(channel, k1, k2, bcc::parse_program(program), text);
      write_text(out.path, text.str());
      return kOk;
    }
  } catch (const bcc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kValidation;
  } catch (const bcc::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const bcc::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOther;
}
