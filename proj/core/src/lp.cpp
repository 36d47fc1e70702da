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

#include "bcc/lp.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>

#include "bcc/error.hpp"
#include "simplex.hpp"

namespace bcc {
namespace detail {

template <>
struct Field<mpq_class> {
  static mpq_class from(double v) { return mpq_class(v); }  // exact for finite doubles
  static double to_double(const mpq_class& v) { return v.get_d(); }
  static bool positive(const mpq_class& v, double) { return sgn(v) > 0; }
  static bool negative(const mpq_class& v, double) { return sgn(v) < 0; }
  static bool nonzero(const mpq_class& v, double) { return sgn(v) != 0; }
  static bool exact() { return true; }
  static void clean(mpq_class&) {}
  static bool is_zero(const mpq_class& v) { return sgn(v) == 0; }
};

}  // namespace detail

LpModel::LpModel(std::size_t num_vars)
    : objective_(num_vars, 0.0), lower_(num_vars, 0.0), names_(num_vars) {}

std::size_t LpModel::add_var(std::string name, double lower) {
  objective_.push_back(0.0);
  lower_.push_back(lower);
  names_.push_back(std::move(name));
  return objective_.size() - 1;
}

void LpModel::set_objective_denominator(std::int64_t d) {
  if (d <= 0) throw BadParameters("objective denominator must be positive");
  denominator_ = d;
}

void LpModel::add_constraint(LinearConstraint c) {
  for (const auto& t : c.terms) {
    if (t.var >= num_vars()) throw ValidationError("constraint references unknown variable");
    if (!std::isfinite(t.coeff)) throw ValidationError("non-finite constraint coefficient");
  }
  if (!std::isfinite(c.rhs)) throw ValidationError("non-finite right-hand side");
  constraints_.push_back(std::move(c));
}

void LpModel::add_constraint(std::vector<LinearTerm> terms, Relation rel, double rhs,
                             std::string name) {
  add_constraint(LinearConstraint{std::move(terms), rel, rhs, std::move(name)});
}

double LpModel::evaluate(const std::vector<double>& x) const {
  double acc = 0.0;
  for (std::size_t j = 0; j < objective_.size(); ++j) acc += objective_[j] * x[j];
  return acc / static_cast<double>(denominator_);
}

double LpModel::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < lower_.size(); ++j) worst = std::max(worst, lower_[j] - x[j]);
  for (const auto& c : constraints_) {
    double lhs = 0.0;
    for (const auto& t : c.terms) lhs += t.coeff * x[t.var];
    switch (c.relation) {
      case Relation::kLessEqual: worst = std::max(worst, lhs - c.rhs); break;
      case Relation::kGreaterEqual: worst = std::max(worst, c.rhs - lhs); break;
      case Relation::kEqual: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

LpSolution lp_solve(const LpModel& model, const LpOptions& options) {
  detail::Simplex<double> simplex(model, options);
  return simplex.solve();
}

LpSolution lp_solve_exact(const LpModel& model, const LpOptions& options) {
  if (model.num_vars() > kExactModeMaxVars) {
    throw BadParameters("exact mode supports at most " + std::to_string(kExactModeMaxVars) +
                        " variables, model has " + std::to_string(model.num_vars()));
  }
  detail::Simplex<mpq_class> simplex(model, options);
  LpSolution sol = simplex.solve();
  if (sol.optimal()) {
    const mpq_class exact = simplex.exact_objective();
    sol.exact_value = exact.get_str();
    sol.value = exact.get_d();
  }
  return sol;
}

}  // namespace bcc
