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

#include "bcc/error.hpp"

#include <sstream>

namespace bcc {
namespace {

std::string describe_negative(std::size_t x, std::size_t y1, std::size_t y2, double value) {
  std::ostringstream os;
  os << "negative probability " << value << " at (x=" << x << ", y1=" << y1 << ", y2=" << y2
     << ")";
  return os.str();
}

std::string describe_row(std::size_t x, double sum) {
  std::ostringstream os;
  os.precision(17);
  os << "row x=" << x << " sums to " << sum << ", expected 1";
  return os.str();
}

}  // namespace

NegativeProbability::NegativeProbability(std::size_t x_, std::size_t y1_, std::size_t y2_,
                                         double value_)
    : ValidationError(describe_negative(x_, y1_, y2_, value_)),
      x(x_), y1(y1_), y2(y2_), value(value_) {}

RowNotNormalized::RowNotNormalized(std::size_t x_, double sum_)
    : ValidationError(describe_row(x_, sum_)), x(x_), sum(sum_) {}

NotDeterministic::NotDeterministic(std::size_t x_)
    : ValidationError("row x=" + std::to_string(x_) + " is not a point mass"), x(x_) {}

ParseError::ParseError(const std::string& location_, const std::string& what)
    : ValidationError(location_ + ": " + what), location(location_) {}

}  // namespace bcc
