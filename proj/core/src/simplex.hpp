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

// Two-phase tableau simplex, templated on the scalar field.
//
// Column layout: [structural | slack/surplus | artificial | rhs].
// The reduced-cost row holds d_j = c_j - c_B B^-1 a_j and, in the rhs slot,
// minus the current objective value, so it is eliminated like any other row.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "bcc/error.hpp"
#include "bcc/lp.hpp"

namespace bcc::detail {

template <class T>
struct Field;

template <>
struct Field<double> {
  static double from(double v) { return v; }
  static double to_double(double v) { return v; }
  static bool positive(double v, double tol) { return v > tol; }
  static bool negative(double v, double tol) { return v < -tol; }
  static bool nonzero(double v, double tol) { return std::abs(v) > tol; }
  static bool exact() { return false; }
  // Entries this small after elimination are rounding noise.
  static void clean(double& v) {
    if (std::abs(v) < 1e-13) v = 0.0;
  }
  static bool is_zero(const double& v) { return v == 0.0; }
};

struct ColumnMap {
  std::size_t plus;
  std::size_t minus;  // == npos when the variable has a finite lower bound
  double shift;
};

template <class T>
class Simplex {
 public:
  Simplex(const LpModel& model, const LpOptions& options) : model_(model), opt_(options) {
    build();
  }

  LpSolution solve() {
    LpSolution sol;
    if (!phase_one()) {
      sol.status = LpStatus::kInfeasible;
      sol.pivots = pivots_;
      return sol;
    }
    if (!phase_two()) {
      sol.status = LpStatus::kUnbounded;
      sol.pivots = pivots_;
      return sol;
    }
    sol.status = LpStatus::kOptimal;
    sol.pivots = pivots_;
    std::vector<T> col_value(num_cols_, T(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (active_[i]) col_value[basis_[i]] = at(i, num_cols_);
    }
    values_.assign(model_.num_vars(), T(0));
    sol.assignment.resize(model_.num_vars());
    for (std::size_t j = 0; j < model_.num_vars(); ++j) {
      const ColumnMap& cm = map_[j];
      T v = col_value[cm.plus];
      if (cm.minus != npos) v -= col_value[cm.minus];
      if (cm.minus == npos) v += Field<T>::from(cm.shift);
      values_[j] = v;
      sol.assignment[j] = Field<T>::to_double(v);
    }
    sol.value = model_.evaluate(sol.assignment);
    return sol;
  }

  // Exact optimum c.x in the solver's field, divided by the denominator.
  T exact_objective() const {
    T acc(0);
    for (std::size_t j = 0; j < model_.num_vars(); ++j) {
      if (model_.objective()[j] != 0.0) acc += Field<T>::from(model_.objective()[j]) * values_[j];
    }
    return acc / Field<T>::from(static_cast<double>(model_.objective_denominator()));
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  T& at(std::size_t i, std::size_t j) { return tab_[i * width_ + j]; }
  const T& at(std::size_t i, std::size_t j) const { return tab_[i * width_ + j]; }

  void build() {
    const std::size_t n = model_.num_vars();
    map_.resize(n);
    std::size_t cols = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double lb = model_.lower_bounds()[j];
      if (std::isinf(lb) && lb < 0) {
        map_[j] = {cols, cols + 1, 0.0};
        cols += 2;
      } else {
        map_[j] = {cols, npos, lb};
        cols += 1;
      }
    }
    structural_ = cols;

    const auto& cons = model_.constraints();
    rows_ = cons.size();
    std::vector<Relation> rel(rows_);
    std::vector<bool> flip(rows_, false);
    std::vector<double> shift_rhs(rows_);
    std::size_t slacks = 0, artificials = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      double rhs = cons[i].rhs;
      for (const auto& t : cons[i].terms) {
        if (map_[t.var].minus == npos) rhs -= t.coeff * map_[t.var].shift;
      }
      rel[i] = cons[i].relation;
      if (rhs < 0) {
        flip[i] = true;
        if (rel[i] == Relation::kLessEqual) {
          rel[i] = Relation::kGreaterEqual;
        } else if (rel[i] == Relation::kGreaterEqual) {
          rel[i] = Relation::kLessEqual;
        }
      }
      shift_rhs[i] = rhs;
      if (rel[i] != Relation::kEqual) ++slacks;
      if (rel[i] != Relation::kLessEqual) ++artificials;
    }
    first_artificial_ = structural_ + slacks;
    num_cols_ = first_artificial_ + artificials;
    width_ = num_cols_ + 1;
    tab_.assign((rows_ + 1) * width_, T(0));
    basis_.assign(rows_, 0);
    active_.assign(rows_, true);

    std::size_t next_slack = structural_, next_art = first_artificial_;
    for (std::size_t i = 0; i < rows_; ++i) {
      const T sign = flip[i] ? T(-1) : T(1);
      if (Field<T>::exact()) {
        // Recompute the shifted rhs exactly.
        T rhs = Field<T>::from(cons[i].rhs);
        for (const auto& t : cons[i].terms) {
          if (map_[t.var].minus == npos && map_[t.var].shift != 0.0) {
            rhs -= Field<T>::from(t.coeff) * Field<T>::from(map_[t.var].shift);
          }
        }
        at(i, num_cols_) = sign * rhs;
      } else {
        at(i, num_cols_) = sign * Field<T>::from(shift_rhs[i]);
      }
      for (const auto& t : cons[i].terms) {
        const T c = sign * Field<T>::from(t.coeff);
        at(i, map_[t.var].plus) += c;
        if (map_[t.var].minus != npos) at(i, map_[t.var].minus) -= c;
      }
      if (rel[i] == Relation::kLessEqual) {
        at(i, next_slack) = T(1);
        basis_[i] = next_slack++;
      } else {
        if (rel[i] == Relation::kGreaterEqual) at(i, next_slack++) = T(-1);
        at(i, next_art) = T(1);
        basis_[i] = next_art++;
      }
    }
  }

  void count_pivot() {
    if (++pivots_ > opt_.max_pivots) {
      throw LpError("simplex iteration limit of " + std::to_string(opt_.max_pivots) +
                    " pivots reached");
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    count_pivot();
    const T inv = T(1) / at(r, c);
    nz_.clear();
    for (std::size_t j = 0; j < width_; ++j) {
      T& v = at(r, j);
      if (Field<T>::is_zero(v)) continue;
      v *= inv;
      nz_.push_back(j);
    }
    at(r, c) = T(1);
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      if (i < rows_ && !active_[i]) continue;
      const T f = at(i, c);
      if (Field<T>::is_zero(f)) continue;
      for (std::size_t j : nz_) {
        T& v = at(i, j);
        v -= f * at(r, j);
        Field<T>::clean(v);
      }
      at(i, c) = T(0);
    }
    basis_[r] = c;
  }

  // Runs simplex iterations on the current cost row over columns
  // [0, allowed_cols). Returns false if unbounded.
  bool iterate(std::size_t allowed_cols) {
    const std::size_t z = rows_;
    bool bland = opt_.pivot_rule == PivotRule::kBland;
    std::uint64_t degenerate_run = 0;
    for (;;) {
      std::size_t enter = npos;
      if (bland) {
        for (std::size_t j = 0; j < allowed_cols; ++j) {
          if (Field<T>::positive(at(z, j), opt_.optimality_tolerance)) {
            enter = j;
            break;
          }
        }
      } else {
        T best(0);
        for (std::size_t j = 0; j < allowed_cols; ++j) {
          const T& d = at(z, j);
          if (Field<T>::positive(d, opt_.optimality_tolerance) && (enter == npos || d > best)) {
            best = d;
            enter = j;
          }
        }
      }
      if (enter == npos) return true;

      std::size_t leave = npos;
      T best_ratio(0);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!active_[i]) continue;
        const T& a = at(i, enter);
        if (!Field<T>::positive(a, opt_.pivot_tolerance)) continue;
        const T ratio = at(i, num_cols_) / a;
        if (leave == npos) {
          leave = i;
          best_ratio = ratio;
          continue;
        }
        if (Field<T>::exact()) {
          if (ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        } else {
          const double diff = Field<T>::to_double(ratio - best_ratio);
          if (diff < -opt_.feasibility_tolerance ||
              (diff <= opt_.feasibility_tolerance && basis_[i] < basis_[leave])) {
            leave = i;
            if (diff < 0) best_ratio = ratio;
          }
        }
      }
      if (leave == npos) return false;

      const bool degenerate = !Field<T>::positive(best_ratio, opt_.feasibility_tolerance);
      pivot(leave, enter);
      if (!bland) {
        degenerate_run = degenerate ? degenerate_run + 1 : 0;
        if (degenerate_run > opt_.degenerate_run_limit) bland = true;
      }
    }
  }

  bool phase_one() {
    const std::size_t z = rows_;
    if (first_artificial_ == num_cols_) return true;
    for (std::size_t j = 0; j < width_; ++j) at(z, j) = T(0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) at(z, j) += at(i, j);
      at(z, num_cols_) += at(i, num_cols_);
    }
    iterate(first_artificial_);
    // z rhs holds -(phase-one objective) = sum of artificials.
    if (Field<T>::positive(at(z, num_cols_), opt_.feasibility_tolerance)) return false;

    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      std::size_t c = npos;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (Field<T>::nonzero(at(i, j), opt_.pivot_tolerance)) {
          c = j;
          break;
        }
      }
      if (c == npos) {
        active_[i] = false;  // redundant equality
      } else {
        pivot(i, c);
      }
    }
    return true;
  }

  bool phase_two() {
    const std::size_t z = rows_;
    for (std::size_t j = 0; j < width_; ++j) at(z, j) = T(0);
    std::vector<T> cost(first_artificial_, T(0));
    for (std::size_t j = 0; j < model_.num_vars(); ++j) {
      const T c = Field<T>::from(model_.objective()[j]);
      cost[map_[j].plus] = c;
      if (map_[j].minus != npos) cost[map_[j].minus] = -c;
    }
    for (std::size_t j = 0; j < first_artificial_; ++j) at(z, j) = cost[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!active_[i]) continue;
      const std::size_t b = basis_[i];
      if (b >= first_artificial_) continue;
      const T cb = cost[b];
      if (Field<T>::is_zero(cb)) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        if (!Field<T>::is_zero(at(i, j))) at(z, j) -= cb * at(i, j);
      }
    }
    for (std::size_t j = first_artificial_; j < num_cols_; ++j) at(z, j) = T(0);
    return iterate(first_artificial_);
  }

  const LpModel& model_;
  LpOptions opt_;
  std::vector<ColumnMap> map_;
  std::size_t structural_ = 0;
  std::size_t first_artificial_ = 0;
  std::size_t num_cols_ = 0;
  std::size_t rows_ = 0;
  std::size_t width_ = 0;
  std::vector<T> tab_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
  std::vector<std::size_t> nz_;
  std::vector<T> values_;
  std::uint64_t pivots_ = 0;
};

}  // namespace bcc::detail
