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

#include "bcc/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "bcc/approx.hpp"
#include "bcc/error.hpp"
#include "bcc/exact.hpp"
#include "bcc/ns_programs.hpp"
#include "bcc/stats.hpp"

namespace bcc {
namespace {

namespace q = quantity;
using nlohmann::json;

class Timer {
 public:
  Timer(Report& r, std::string name)
      : report_(r), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    report_.add_timing(name_, std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - start_)
                                  .count());
  }

 private:
  Report& report_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

json code_json(const Code& c) {
  return {{"k1", c.k1}, {"k2", c.k2}, {"encoder", c.encoder}, {"decoder1", c.decoder1},
          {"decoder2", c.decoder2}};
}

const char* pivot_name(PivotRule r) { return r == PivotRule::kBland ? "bland" : "dantzig"; }

void echo_options(Report& r, const CommandOptions& o) {
  auto& p = r.provenance();
  p["solver"] = "bcc";
  p["workers"] = o.workers;
  p["enumeration_cap"] = o.cap;
  p["tolerances"] = {{"check", o.check_tolerance},
                     {"normalization", o.normalization_tolerance},
                     {"lp_pivot", o.lp.pivot_tolerance},
                     {"lp_feasibility", o.lp.feasibility_tolerance},
                     {"lp_optimality", o.lp.optimality_tolerance}};
  p["lp"] = {{"pivot_rule", pivot_name(o.lp.pivot_rule)},
             {"max_pivots", o.lp.max_pivots},
             {"exact", o.exact_lp}};
}

void solve_compact(Report& r, const ChannelTable& w, std::size_t k1, std::size_t k2,
                   Objective objective, const CommandOptions& o, const char* name) {
  Timer t(r, name);
  const LpModel m =
      objective == Objective::kJoint ? build_ns_joint(w, k1, k2) : build_ns_sum(w, k1, k2);
  const LpSolution sol = o.exact_lp ? lp_solve_exact(m, o.lp) : lp_solve(m, o.lp);
  const NsSolution ns = extract_ns_solution(w, k1, k2, sol);
  r.set(name, ns.value);
  if (!sol.exact_value.empty()) r.set_exact(name, sol.exact_value);
  r.provenance()["lp_pivots"][name] = sol.pivots;
}

void add_checks(Report& r, std::size_t k1, std::size_t k2, double tol) {
  auto both = [&](const char* a, const char* b) { return r.has(a) && r.has(b); };
  if (both(q::kJoint, q::kSum)) {
    const double s = r.get(q::kJoint), ss = r.get(q::kSum);
    r.check_le("joint_le_sum", "joint success is at most sum success", q::kJoint, s, q::kSum, ss,
               tol);
    r.check_le("error_sum_le_error", "sum-objective error is at most joint error", "1-S_sum",
               1 - ss, "1-S", 1 - s, tol);
    r.check_le("error_le_twice_error_sum", "joint error is at most twice the sum-objective error",
               "1-S", 1 - s, "2(1-S_sum)", 2 * (1 - ss), tol);
  }
  if (r.has(q::kSum)) {
    r.check_le("sum_le_one", "sum success is a probability", q::kSum, r.get(q::kSum), "1", 1.0,
               tol);
  }
  if (both(q::kJoint, q::kNsDec)) {
    r.check_le("joint_le_ns_dec", "a shared decoder box never hurts", q::kJoint, r.get(q::kJoint),
               q::kNsDec, r.get(q::kNsDec), tol);
  }
  if (both(q::kNsDec, q::kNs)) {
    r.check_le("ns_dec_le_ns", "a full box is at least as strong as a decoder box", q::kNsDec,
               r.get(q::kNsDec), q::kNs, r.get(q::kNs), tol);
  }
  if (both(q::kJoint, q::kNs)) {
    r.check_le("joint_le_ns", "non-signaling assistance never hurts (joint)", q::kJoint,
               r.get(q::kJoint), q::kNs, r.get(q::kNs), tol);
  }
  if (both(q::kSum, q::kNsSum)) {
    r.check_le("sum_le_ns_sum", "non-signaling assistance never hurts (sum)", q::kSum,
               r.get(q::kSum), q::kNsSum, r.get(q::kNsSum), tol);
  }
  if (both(q::kNsDecSum, q::kSum)) {
    const double a = r.get(q::kNsDecSum), b = r.get(q::kSum);
    const char* claim = "a decoder box does not improve sum success";
    r.check_le("ns_dec_sum_eq_sum_upper", claim, q::kNsDecSum, a, q::kSum, b, tol);
    r.check_le("ns_dec_sum_eq_sum_lower", claim, q::kSum, b, q::kNsDecSum, a, tol);
  }
  if (both(q::kNs, q::kNsSum)) {
    const double a = r.get(q::kNs), b = r.get(q::kNsSum);
    r.check_le("ns_sum_sandwich_lower", "joint non-signaling success is at least 2 S_NS_sum - 1",
               "2*S_NS_sum-1", 2 * b - 1, q::kNs, a, tol);
    r.check_le("ns_sum_sandwich_upper", "joint non-signaling success is at most S_NS_sum",
               q::kNs, a, q::kNsSum, b, tol);
  }
  if (both(q::kDqg, q::kJoint)) {
    const double kk = static_cast<double>(k1 * k2);
    const double a = kk * r.get(q::kJoint), b = r.get(q::kDqg);
    const char* claim = "k1 k2 S equals the densest quotient graph value";
    r.check_le("joint_eq_dqg_upper", claim, "k1*k2*S", a, q::kDqg, b, tol * kk);
    r.check_le("joint_eq_dqg_lower", claim, q::kDqg, b, "k1*k2*S", a, tol * kk);
  }
}

// Degree bound on S_NS and the rounding chain, deterministic channels only.
void add_deterministic_checks(Report& r, const DeterministicChannel& det, const ChannelTable& w,
                              std::size_t k1, std::size_t k2, const CommandOptions& o) {
  if (!r.has(q::kNs)) return;
  const BipartiteGraph g = channel_graph(det);
  std::size_t capped = 0;
  for (std::size_t u = 0; u < g.left_size(); ++u) capped += std::min(k2, g.left_degree(u));
  const double kk = static_cast<double>(k1 * k2);
  const double bound = static_cast<double>(std::min(k1 * k2, capped)) / kk;
  r.set("S_NS_degree_bound", bound);
  r.check_le("ns_le_degree_bound", "S_NS is at most the capped receiver-1 degree sum over k1 k2",
             q::kNs, r.get(q::kNs), "S_NS_degree_bound", bound, o.check_tolerance);
  if (!o.rounding_chain) return;
  const double alpha = poisson_concavity_ratio(k1);
  SolveOptions so;
  so.cap = o.cap;
  so.workers = o.workers;
  for (std::size_t l1 = 1; l1 <= k1; ++l1) {
    for (std::size_t l2 = 1; l2 <= k2; ++l2) {
      const double f1 = 1.0 - std::pow(1.0 - 1.0 / static_cast<double>(l1), static_cast<double>(k1));
      const double f2 = 1.0 - std::pow(1.0 - 1.0 / static_cast<double>(l2), static_cast<double>(k2));
      const std::string tag = "[" + std::to_string(l1) + "," + std::to_string(l2) + "]";
      const double s = solve_joint(w, l1, l2, so).value;
      r.set("S" + tag, s);
      r.check_le("rounding_chain" + tag,
                 "scaled S_NS(k1,k2) is achievable without assistance with l1 x l2 messages",
                 "factor*S_NS", alpha * f1 * f2 * r.get(q::kNs), "S" + tag, s, o.check_tolerance);
    }
  }
}

Report solve_into(Report r, const ChannelFile& channel, std::size_t k1, std::size_t k2,
                  const std::set<Quantity>& which, const CommandOptions& o) {
  const ChannelTable& w = channel.table;
  echo_options(r, o);
  r.provenance()["k1"] = k1;
  r.provenance()["k2"] = k2;
  r.provenance()["sizes"] = {{"x", w.input_size()}, {"y1", w.out1_size()}, {"y2", w.out2_size()}};
  SolveOptions so;
  so.cap = o.cap;
  so.workers = o.workers;
  so.lp = o.lp;

  if (which.count(Quantity::kJoint)) {
    Timer t(r, q::kJoint);
    const SolveReport s = solve_joint(w, k1, k2, so);
    r.set(q::kJoint, s.value);
    r.witnesses()[q::kJoint] = code_json(*s.code);
  }
  if (which.count(Quantity::kSum)) {
    Timer t(r, q::kSum);
    const SolveReport s = solve_sum(w, k1, k2, so);
    r.set(q::kSum, s.value);
    r.witnesses()[q::kSum] = code_json(*s.code);
  }
  if (which.count(Quantity::kNs)) solve_compact(r, w, k1, k2, Objective::kJoint, o, q::kNs);
  if (which.count(Quantity::kNsSum)) solve_compact(r, w, k1, k2, Objective::kSum, o, q::kNsSum);
  if (which.count(Quantity::kNsDec)) {
    Timer t(r, q::kNsDec);
    const SolveReport s = solve_ns_dec(w, k1, k2, Objective::kJoint, so);
    r.set(q::kNsDec, s.value);
    r.witnesses()[q::kNsDec] = {{"encoder", s.encoder}};
  }
  if (which.count(Quantity::kNsDecSum)) {
    Timer t(r, q::kNsDecSum);
    const SolveReport s = solve_ns_dec(w, k1, k2, Objective::kSum, so);
    r.set(q::kNsDecSum, s.value);
    r.witnesses()[q::kNsDecSum] = {{"encoder", s.encoder}};
  }
  std::optional<DeterministicChannel> det;
  if (channel.deterministic) {
    det = channel.deterministic;
  } else {
    try {
      det = to_deterministic(w);
    } catch (const NotDeterministic&) {
    }
  }
  if (which.count(Quantity::kDqg)) {
    if (!det) throw BadParameters("dqg needs a deterministic channel");
    Timer t(r, q::kDqg);
    const SolveReport s = solve_dqg(channel_graph(*det), k1, k2, so);
    r.set(q::kDqg, s.value);
    r.witnesses()[q::kDqg] = {{"left", s.left->assignment()}, {"right", s.right->assignment()}};
  }
  add_checks(r, k1, k2, o.check_tolerance);
  if (det) add_deterministic_checks(r, *det, w, k1, k2, o);
  return r;
}

}  // namespace

std::set<Quantity> parse_quantities(const std::string& spec, bool deterministic) {
  std::set<Quantity> out;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "joint") {
      out.insert(Quantity::kJoint);
    } else if (item == "sum") {
      out.insert(Quantity::kSum);
    } else if (item == "ns") {
      out.insert(Quantity::kNs);
    } else if (item == "ns-sum") {
      out.insert(Quantity::kNsSum);
    } else if (item == "ns-dec") {
      out.insert(Quantity::kNsDec);
    } else if (item == "ns-dec-sum") {
      out.insert(Quantity::kNsDecSum);
    } else if (item == "dqg") {
      out.insert(Quantity::kDqg);
    } else if (item == "all") {
      out.insert({Quantity::kJoint, Quantity::kSum, Quantity::kNs, Quantity::kNsSum,
                  Quantity::kNsDec, Quantity::kNsDecSum});
      if (deterministic) out.insert(Quantity::kDqg);
    } else {
      throw BadParameters("unknown quantity \"" + item + "\"");
    }
  }
  if (out.empty()) throw BadParameters("no quantity requested");
  return out;
}

Report cmd_solve(const ChannelFile& channel, std::size_t k1, std::size_t k2,
                 const std::set<Quantity>& which, const CommandOptions& options) {
  return solve_into(Report("solve"), channel, k1, k2, which, options);
}

Report cmd_approx(const ChannelFile& channel, std::size_t k1, std::size_t k2,
                  const ApproxCommandOptions& approx, const CommandOptions& options) {
  Report r("approx");
  echo_options(r, options);
  const DeterministicChannel det = channel.as_deterministic();
  ApproxOptions ao;
  ao.seed = approx.seed;
  ao.num_samples = approx.samples;
  ao.greedy_restarts = approx.restarts;
  ao.workers = options.workers;
  DetBccResult res;
  {
    Timer t(r, "approx");
    res = approximate_detbcc(det, k1, k2, ao);
  }
  const ApproxResult& a = res.approx;
  const double code_success = joint_success(channel.table, res.code);
  r.set("approx_edges", static_cast<double>(a.value));
  r.set("approx_probability", res.probability);
  r.set("code_joint_success", code_success);
  r.set("upper_bound_edges", static_cast<double>(a.upper_bound));
  r.set("ratio_certificate", a.ratio_certificate);
  r.set("welfare", static_cast<double>(a.welfare));
  r.set("expected_edges", a.expected_edges);
  r.set("derandomized_edges", static_cast<double>(a.derandomized_value));
  const double tol = options.check_tolerance;
  r.check_le("value_le_upper_bound", "approximation never exceeds its certified upper bound",
             "approx_edges", static_cast<double>(a.value), "upper_bound_edges",
             static_cast<double>(a.upper_bound), 0.0);
  r.check_le("probability_eq_code_upper", "reported probability is the code's joint success",
             "approx_probability", res.probability, "code_joint_success", code_success, tol);
  r.check_le("probability_eq_code_lower", "reported probability is the code's joint success",
             "code_joint_success", code_success, "approx_probability", res.probability, tol);
  if (k1 < det.out1_size()) {
    r.check_le("derandomized_ge_expectation",
               "conditional expectations never fall below the random expectation",
               "expected_edges", a.expected_edges, "derandomized_edges",
               static_cast<double>(a.derandomized_value), 1e-9);
  }
  if (approx.compare_exact) {
    SolveOptions so;
    so.cap = options.cap;
    so.workers = options.workers;
    Timer t(r, q::kJoint);
    const double s = solve_joint(channel.table, k1, k2, so).value;
    r.set(q::kJoint, s);
    r.set("approx_ratio", s > 0 ? res.probability / s : 1.0);
    const double factor = 0.5 * std::pow(1.0 - std::exp(-1.0), 2.0);
    r.check_le("approx_meets_certified_factor",
               "approximation reaches half of (1-1/e)^2 times the optimum", "factor*S",
               factor * s, "approx_probability", res.probability, tol);
    r.check_le("approx_le_optimum", "approximation never beats the optimum", "approx_probability",
               res.probability, q::kJoint, s, tol);
  }
  r.witnesses()["code"] = code_json(res.code);
  r.witnesses()["left"] = a.p1.assignment();
  r.witnesses()["right"] = a.p2.assignment();
  auto& p = r.provenance();
  p["k1"] = k1;
  p["k2"] = k2;
  p["seed"] = approx.seed;
  p["samples"] = a.samples_used;
  p["greedy_restarts"] = approx.restarts;
  p["seed_streams"] = "sample s uses splitmix64(seed + 2s), restart r uses splitmix64(seed + 2r + 1)";
  return r;
}

HardnessRun cmd_hardness(const HardnessCommandOptions& h, const CommandOptions& options) {
  HardnessRun run{Report("hardness"), {}};
  Report& r = run.report;
  echo_options(r, options);
  const HardnessInstance inst = build_instance(h.k1, h.delta, h.seed);
  const double m = static_cast<double>(inst.m);
  r.set("m", m);
  r.set("normalization", inst.normalization);
  r.set("p_leak", p_leak(h.k1, h.delta));
  const double planted = optimal_welfare(inst, Variant::kPlanted);
  const double decoy = optimal_welfare(inst, Variant::kDecoy);
  r.set("welfare_planted", planted);
  r.set("welfare_decoy", decoy);
  r.set("welfare_ratio", decoy / planted);
  const double tol = options.check_tolerance;

  if (partition_count(inst.m, inst.k1) <= options.cap) {
    Timer t(r, "welfare_exhaustive");
    for (auto [v, name, closed] : {std::tuple{Variant::kPlanted, "planted", planted},
                                   std::tuple{Variant::kDecoy, "decoy", decoy}}) {
      const double ex = optimal_welfare_exhaustive(inst, v, options.cap);
      const std::string key = std::string("welfare_") + name + "_exhaustive";
      r.set(key, ex);
      const std::string claim = std::string("closed-form ") + name + " welfare is the optimum";
      r.check_le(std::string("welfare_") + name + "_upper", claim, "closed", closed, key, ex, 1e-9);
      r.check_le(std::string("welfare_") + name + "_lower", claim, key, ex, "closed", closed, 1e-9);
    }
  }

  if (h.materialize) {
    Timer t(r, "materialize");
    const ChannelTable wp = materialize_channel(inst, Variant::kPlanted);
    const ChannelTable wd = materialize_channel(inst, Variant::kDecoy);
    std::vector<std::vector<std::size_t>> subsets;
    if (inst.m <= 4) {
      for (unsigned mask = 1; mask < (1u << inst.m); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < inst.m; ++i) {
          if (mask >> i & 1u) s.push_back(i);
        }
        subsets.push_back(s);
      }
    } else {
      Rng rng(derive_seed(h.seed, 1));
      for (int k = 0; k < 64; ++k) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < inst.m; ++i) {
          if (rng.below(2)) s.push_back(i);
        }
        if (!s.empty()) subsets.push_back(s);
      }
      for (const auto& b : inst.blocks) subsets.push_back(b);
    }
    double worst = 0.0;
    for (const auto& s : subsets) {
      worst = std::max(worst, std::abs(receiver1_utility(wp, s) / inst.normalization -
                                       value_oracle(inst, Variant::kPlanted, s)));
      worst = std::max(worst, std::abs(receiver1_utility(wd, s) / inst.normalization -
                                       value_oracle(inst, Variant::kDecoy, s)));
    }
    r.set("oracle_subsets_checked", static_cast<double>(subsets.size()));
    r.set("oracle_max_abs_error", worst);
    r.check_le("oracle_matches_table", "closed-form utility matches the materialized channel",
               "oracle_max_abs_error", worst, "tolerance", 0.0, tol);
  }

  QueryStrategy strategy;
  if (h.strategy == "singletons") {
    strategy = singleton_strategy(inst.m);
  } else if (h.strategy == "random") {
    const std::size_t size =
        h.subset_size != 0 ? h.subset_size : static_cast<std::size_t>(std::lround(std::sqrt(m)));
    strategy = random_subset_strategy(inst.m, size, derive_seed(h.seed, 2));
    r.provenance()["subset_size"] = size;
  } else if (h.strategy == "bisection") {
    strategy = bisection_strategy(inst.m, derive_seed(h.seed, 2));
  } else if (h.strategy == "block") {
    strategy = fixed_set_strategy(inst.blocks.front());
  } else {
    throw BadParameters("unknown strategy \"" + h.strategy + "\"");
  }
  {
    Timer t(r, "queries");
    run.log = run_query_experiment(inst, strategy, h.budget);
  }
  r.set("queries", static_cast<double>(run.log.queries.size()));
  r.set("distinguished", run.log.distinguished_at ? 1.0 : 0.0);
  if (run.log.distinguished_at) r.set("distinguished_at", static_cast<double>(*run.log.distinguished_at));
  r.witnesses()["blocks"] = inst.blocks;
  auto& p = r.provenance();
  p["k1"] = h.k1;
  p["delta"] = h.delta;
  p["seed"] = h.seed;
  p["strategy"] = h.strategy;
  p["budget"] = h.budget;
  return run;
}

void write_query_records(const QueryLog& log, std::ostream& out) {
  for (std::size_t i = 0; i < log.queries.size(); ++i) {
    const json rec = {{"index", i},
                      {"items", log.queries[i].items},
                      {"value", log.queries[i].value},
                      {"distinguishes", log.distinguished_at && *log.distinguished_at == i}};
    out << rec.dump() << "\n";
  }
}

Report cmd_tensor(const ChannelFile& channel, std::size_t n, std::size_t k1, std::size_t k2,
                  const std::set<Quantity>& which, const CommandOptions& options) {
  if (n == 0) throw BadParameters("blocklength must be at least 1");
  const ChannelTable wn = tensor_power(channel.table, n);
  ChannelFile power = make_channel_file(wn);
  if (channel.deterministic) power = make_channel_file(to_deterministic(wn));
  Report r("tensor");
  r.provenance()["blocklength"] = n;
  return solve_into(std::move(r), power, k1, k2, which, options);
}

Program parse_program(const std::string& name) {
  if (name == "ns") return Program::kNs;
  if (name == "ns-sum") return Program::kNsSum;
  if (name == "ns-full") return Program::kNsFull;
  if (name == "ns-full-sum") return Program::kNsFullSum;
  throw BadParameters("unknown program \"" + name + "\"");
}

void cmd_export_lp(const ChannelFile& channel, std::size_t k1, std::size_t k2, Program program,
                   std::ostream& out) {
  const ChannelTable& w = channel.table;
  switch (program) {
    case Program::kNs: write_lp_format(build_ns_joint(w, k1, k2), out); break;
    case Program::kNsSum: write_lp_format(build_ns_sum(w, k1, k2), out); break;
    case Program::kNsFull:
      write_lp_format(build_ns_full(w, k1, k2, Objective::kJoint), out);
      break;
    case Program::kNsFullSum:
      write_lp_format(build_ns_full(w, k1, k2, Objective::kSum), out);
      break;
  }
}

}  // namespace bcc
