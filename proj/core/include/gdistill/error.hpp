// Copyright 2026 The Authors.
//
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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gdistill {

// Invalid arguments or violated preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. line() is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// The byte budget cannot hold a single exemplar ball.
class InfeasibleBudget : public Error {
 public:
  InfeasibleBudget(std::uint64_t budget, std::uint64_t smallest_feasible)
      : Error("budget of " + std::to_string(budget) +
              " bytes cannot hold any exemplar; smallest feasible budget is " +
              std::to_string(smallest_feasible) + " bytes"),
        budget_(budget),
        smallest_feasible_(smallest_feasible) {}

  std::uint64_t budget() const { return budget_; }
  std::uint64_t smallest_feasible() const { return smallest_feasible_; }

 private:
  std::uint64_t budget_;
  std::uint64_t smallest_feasible_;
};

}  // namespace gdistill
