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

// A small dense linear-programming toolkit: a model type, a two-phase primal
// simplex in floating point or exact rational arithmetic, and an exporter
// for the CPLEX LP text format.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace bcc {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LinearTerm {
  std::size_t var;
  double coeff;
};

struct LinearConstraint {
  std::vector<LinearTerm> terms;  // sparse; repeated vars are summed
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

// maximize (objective . x) / objective_denominator
// subject to constraints and x >= lower_bounds (-inf allowed).
//
// The objective is kept as integer-denominated so that exact mode can
// represent values like 1/(k1 k2) without rounding.
class LpModel {
 public:
  explicit LpModel(std::size_t num_vars = 0);

  std::size_t num_vars() const { return objective_.size(); }
  std::size_t add_var(std::string name = {}, double lower = 0.0);

  void set_objective(std::size_t var, double coeff) { objective_.at(var) = coeff; }
  void add_objective(std::size_t var, double coeff) { objective_.at(var) += coeff; }
  void set_objective_denominator(std::int64_t d);
  void set_lower_bound(std::size_t var, double lower) { lower_.at(var) = lower; }
  void set_var_name(std::size_t var, std::string name) { names_.at(var) = std::move(name); }

  // Throws ValidationError for out-of-range variables or non-finite data.
  void add_constraint(LinearConstraint c);
  void add_constraint(std::vector<LinearTerm> terms, Relation rel, double rhs,
                      std::string name = {});

  const std::vector<double>& objective() const { return objective_; }
  std::int64_t objective_denominator() const { return denominator_; }
  const std::vector<double>& lower_bounds() const { return lower_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  const std::string& var_name(std::size_t var) const { return names_[var]; }

  // (objective . x) / denominator.
  double evaluate(const std::vector<double>& x) const;
  // Largest violation over all constraints and bounds (0 when feasible).
  double max_violation(const std::vector<double>& x) const;

 private:
  std::vector<double> objective_;
  std::vector<double> lower_;
  std::vector<std::string> names_;
  std::vector<LinearConstraint> constraints_;
  std::int64_t denominator_ = 1;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> assignment;
  std::uint64_t pivots = 0;
  // Exact optimum as "p/q" when solved in rational mode; empty otherwise.
  std::string exact_value;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

enum class PivotRule {
  kBland,    // smallest-index entering and leaving variables; never cycles
  kDantzig,  // most positive reduced cost; switches to Bland after a run of degenerate pivots
};

struct LpOptions {
  PivotRule pivot_rule = PivotRule::kBland;
  std::uint64_t max_pivots = 1'000'000;
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  // Dantzig only: consecutive degenerate pivots before falling back to Bland.
  std::uint64_t degenerate_run_limit = 50;
};

inline constexpr std::size_t kExactModeMaxVars = 200;

// Two-phase primal simplex on a dense tableau in double precision.
// Throws LpError if max_pivots is reached.
LpSolution lp_solve(const LpModel& model, const LpOptions& options = {});

// Same algorithm in exact rational arithmetic (every double is converted
// exactly). Tolerances are ignored. Throws BadParameters above
// kExactModeMaxVars structural variables.
LpSolution lp_solve_exact(const LpModel& model, const LpOptions& options = {});

// CPLEX LP format. Variables without names are written x0, x1, ...
void write_lp_format(const LpModel& model, std::ostream& out);

}  // namespace bcc
