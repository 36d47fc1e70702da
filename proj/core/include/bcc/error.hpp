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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bcc {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input does not satisfy a documented precondition (bad shape, bad
// probabilities, out-of-range index, bad parameter).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NegativeProbability : public ValidationError {
 public:
  NegativeProbability(std::size_t x, std::size_t y1, std::size_t y2, double value);
  std::size_t x, y1, y2;
  double value;
};

class RowNotNormalized : public ValidationError {
 public:
  RowNotNormalized(std::size_t x, double sum);
  std::size_t x;
  double sum;
};

class NotDeterministic : public ValidationError {
 public:
  explicit NotDeterministic(std::size_t x);
  std::size_t x;
};

class SideMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BadPartIndex : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BadParameters : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Malformed input file; `location` names the offending JSON path.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& location, const std::string& what);
  std::string location;
};

// A size or enumeration limit would be exceeded. Never a silent fallback.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class SizeCapExceeded : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

class EnumerationCapExceeded : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

// LP solver failures that are not a status (iteration limit, or a caller
// that required an optimum and did not get one).
class LpError : public Error {
 public:
  using Error::Error;
};

// A solver produced a result violating its own postconditions.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace bcc
