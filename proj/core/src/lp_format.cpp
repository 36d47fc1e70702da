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

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>

#include "bcc/lp.hpp"

namespace bcc {
namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string var_label(const LpModel& m, std::size_t j) {
  const std::string& n = m.var_name(j);
  return n.empty() ? "x" + std::to_string(j) : n;
}

// Writes "+ c name" terms, wrapping well below the 255-character line limit.
void write_terms(std::ostream& out, const LpModel& m, const std::map<std::size_t, double>& terms,
                 std::size_t indent) {
  std::size_t col = indent;
  bool first = true;
  for (const auto& [var, coeff] : terms) {
    if (coeff == 0.0) continue;
    std::string t = (coeff < 0 ? "- " : (first ? "" : "+ ")) + number(std::abs(coeff)) + " " +
                    var_label(m, var);
    if (col + t.size() > 200) {
      out << "\n" << std::string(indent, ' ');
      col = indent;
    }
    out << (first ? "" : " ") << t;
    col += t.size() + 1;
    first = false;
  }
  if (first) out << "0 " << var_label(m, 0);
}

}  // namespace

void write_lp_format(const LpModel& model, std::ostream& out) {
  out << "\\ generated by bcc\n";
  out << "\\ objective coefficients are divided by the model denominator "
      << model.objective_denominator() << "\n";
  out << "Maximize\n obj: ";
  std::map<std::size_t, double> obj;
  const double d = static_cast<double>(model.objective_denominator());
  for (std::size_t j = 0; j < model.num_vars(); ++j) {
    if (model.objective()[j] != 0.0) obj[j] = model.objective()[j] / d;
  }
  write_terms(out, model, obj, 6);
  out << "\nSubject To\n";
  std::size_t idx = 0;
  for (const auto& c : model.constraints()) {
    std::map<std::size_t, double> row;
    for (const auto& t : c.terms) row[t.var] += t.coeff;
    const std::string name = c.name.empty() ? "c" + std::to_string(idx) : c.name;
    out << " " << name << ": ";
    write_terms(out, model, row, name.size() + 3);
    switch (c.relation) {
      case Relation::kLessEqual: out << " <= "; break;
      case Relation::kGreaterEqual: out << " >= "; break;
      case Relation::kEqual: out << " = "; break;
    }
    out << number(c.rhs) << "\n";
    ++idx;
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < model.num_vars(); ++j) {
    const double lb = model.lower_bounds()[j];
    if (std::isinf(lb) && lb < 0) {
      out << " " << var_label(model, j) << " free\n";
    } else if (lb != 0.0) {
      out << " " << var_label(model, j) << " >= " << number(lb) << "\n";
    }
  }
  out << "End\n";
}

}  // namespace bcc
