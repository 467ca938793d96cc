// Copyright 2026 The qatsp authors
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

#include <stdexcept>
#include <string>

namespace qatsp {

// Malformed input file; carries the 1-based line where parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class UnsupportedFormatError : public std::runtime_error {
 public:
  explicit UnsupportedFormatError(const std::string& msg)
      : std::runtime_error(msg) {}
};

// Exhaustive enumeration request beyond the configured budget.
class BudgetError : public std::invalid_argument {
 public:
  explicit BudgetError(const std::string& msg) : std::invalid_argument(msg) {}
};

// No physical coupler available for a required logical edge.
class EmbeddingError : public std::runtime_error {
 public:
  explicit EmbeddingError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qatsp
