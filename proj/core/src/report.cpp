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

#include "bcc/report.hpp"

#include <cstdio>
#include <sstream>

namespace bcc {
namespace {

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

bool Report::check_le(const std::string& name, const std::string& claim,
                      const std::string& lhs_name, double lhs, const std::string& rhs_name,
                      double rhs, double tolerance) {
  Check c;
  c.name = name;
  c.claim = claim;
  c.lhs_name = lhs_name;
  c.rhs_name = rhs_name;
  c.lhs = lhs;
  c.rhs = rhs;
  c.tolerance = tolerance;
  c.slack = rhs - lhs;
  c.pass = c.slack >= -tolerance;
  checks_.push_back(c);
  return c.pass;
}

bool Report::all_pass() const {
  for (const auto& c : checks_) {
    if (!c.pass) return false;
  }
  return true;
}

std::vector<const Check*> Report::failures() const {
  std::vector<const Check*> out;
  for (const auto& c : checks_) {
    if (!c.pass) out.push_back(&c);
  }
  return out;
}

nlohmann::json Report::to_json(bool include_timings) const {
  nlohmann::json doc;
  doc["format"] = "bcc-report";
  doc["format_version"] = 1;
  doc["command"] = command_;
  doc["quantities"] = quantities_;
  if (!exact_.empty()) doc["exact"] = exact_;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : checks_) {
    checks.push_back({{"name", c.name},
                      {"claim", c.claim},
                      {"lhs", {{"name", c.lhs_name}, {"value", c.lhs}}},
                      {"rhs", {{"name", c.rhs_name}, {"value", c.rhs}}},
                      {"tolerance", c.tolerance},
                      {"slack", c.slack},
                      {"pass", c.pass}});
  }
  doc["checks"] = checks;
  doc["all_pass"] = all_pass();
  doc["witnesses"] = witnesses_;
  nlohmann::json prov = provenance_;
  if (include_timings) prov["timings_seconds"] = timings_;
  doc["provenance"] = prov;
  return doc;
}

std::string Report::to_text(bool include_timings) const {
  return to_json(include_timings).dump(2) + "\n";
}

std::string Report::to_csv() const {
  std::ostringstream out;
  out << "kind,name,value,detail\n";
  for (const auto& [name, value] : quantities_) {
    auto it = exact_.find(name);
    out << "quantity," << csv_field(name) << "," << csv_number(value) << ","
        << (it == exact_.end() ? "" : csv_field(it->second)) << "\n";
  }
  for (const auto& c : checks_) {
    out << "check," << csv_field(c.name) << "," << csv_number(c.slack) << ","
        << (c.pass ? "pass" : "FAIL") << "\n";
  }
  return out.str();
}

}  // namespace bcc
