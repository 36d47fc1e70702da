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

// Run reports: named quantities, witnesses, provenance and inequality
// checks, serialized as one canonical JSON document (sorted keys) or as a
// flat CSV table.

#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace bcc {

// lhs <= rhs + tolerance. For equalities two checks are recorded.
struct Check {
  std::string name;   // short identifier, e.g. "joint_le_sum"
  std::string claim;  // human-readable statement
  std::string lhs_name, rhs_name;
  double lhs = 0.0, rhs = 0.0;
  double tolerance = 0.0;
  double slack = 0.0;  // rhs - lhs; negative beyond -tolerance means failure
  bool pass = true;
};

class Report {
 public:
  explicit Report(std::string command = {}) : command_(std::move(command)) {}

  void set(const std::string& name, double value) { quantities_[name] = value; }
  void set_exact(const std::string& name, std::string fraction) {
    exact_[name] = std::move(fraction);
  }
  bool has(const std::string& name) const { return quantities_.count(name) != 0; }
  double get(const std::string& name) const { return quantities_.at(name); }

  // Records lhs <= rhs within tolerance. Returns the check's pass flag.
  bool check_le(const std::string& name, const std::string& claim, const std::string& lhs_name,
                double lhs, const std::string& rhs_name, double rhs, double tolerance);

  nlohmann::json& witnesses() { return witnesses_; }
  nlohmann::json& provenance() { return provenance_; }
  void add_timing(const std::string& name, double seconds) { timings_[name] = seconds; }

  const std::map<std::string, double>& quantities() const { return quantities_; }
  const std::vector<Check>& checks() const { return checks_; }
  bool all_pass() const;
  std::vector<const Check*> failures() const;

  // Timings are excluded unless asked for, so default output is
  // byte-identical across runs.
  nlohmann::json to_json(bool include_timings = false) const;
  std::string to_text(bool include_timings = false) const;
  // "kind,name,value,detail" rows for quantities and checks.
  std::string to_csv() const;

 private:
  std::string command_;
  std::map<std::string, double> quantities_;
  std::map<std::string, std::string> exact_;
  std::map<std::string, double> timings_;
  std::vector<Check> checks_;
  nlohmann::json witnesses_ = nlohmann::json::object();
  nlohmann::json provenance_ = nlohmann::json::object();
};

// Quantity names with a fixed, documented meaning.
namespace quantity {
inline constexpr const char* kJoint = "S";
inline constexpr const char* kSum = "S_sum";
inline constexpr const char* kNs = "S_NS";
inline constexpr const char* kNsSum = "S_NS_sum";
inline constexpr const char* kNsDec = "S_NS_dec";
inline constexpr const char* kNsDecSum = "S_NS_dec_sum";
inline constexpr const char* kDqg = "dqg";
}  // namespace quantity

}  // namespace bcc
