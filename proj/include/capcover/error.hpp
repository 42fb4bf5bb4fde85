// Copyright 2026 The capcover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace capcover {

// Thrown when an argument lies outside an operation's supported domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Thrown when an iterative method fails to converge. Carries the best
// bracket [lo, hi] found before giving up.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}

  [[nodiscard]] std::pair<double, double> bracket() const { return {lo_, hi_}; }

 private:
  double lo_;
  double hi_;
};

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail
}  // namespace capcover
