// Copyright 2026 The mpstruct Authors
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

#include <stdexcept>
#include <string>
#include <utility>

namespace mpstruct {

/// Invalid cost-model configuration. `field()` names the offending entry,
/// e.g. "c[3]" or "m".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Malformed serialized structure; `location()` is a JSON pointer-ish path.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string location, const std::string& what)
      : std::runtime_error(location.empty() ? what : location + ": " + what),
        location_(std::move(location)) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

/// A well-formed request that has no solution (e.g. an infeasible degree
/// vector, or n-1 with no factorization over the allowed fan-ins).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural invariant violated by an input graph.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive enumeration ran over its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mpstruct
