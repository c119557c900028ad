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

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpstruct/rational.hpp"

namespace mpstruct {

/// Per-fan-in hardware cost factors for computation nodes with at most
/// `max_fan_in()` inputs.
///
/// Both factor tables are indexed by fan-in 0..m. Entries 0 and 1 are
/// always zero, every entry is non-negative and each table is
/// non-decreasing in the fan-in. Instances are immutable once built.
class CostModel {
 public:
  /// Validates and builds a model. `complexity` and `latency` are either
  /// the full tables (m+1 entries, fan-in 0..m) or the short form (m-1
  /// entries, fan-in 2..m) with the first two entries implied zero.
  /// Throws ConfigError naming the offending field.
  static CostModel create(int max_fan_in, std::vector<Rational> complexity,
                          std::vector<Rational> latency);

  /// Uniform model: c_i = l_i = 1 for every fan-in in [2, m].
  static CostModel unit(int max_fan_in);

  int max_fan_in() const noexcept { return max_fan_in_; }

  /// c_i; throws std::out_of_range for i outside [0, m].
  const Rational& complexity_factor(int fan_in) const;
  /// l_i; throws std::out_of_range for i outside [0, m].
  const Rational& latency_factor(int fan_in) const;

  std::span<const Rational> complexity_factors() const noexcept { return complexity_; }
  std::span<const Rational> latency_factors() const noexcept { return latency_; }

  friend bool operator==(const CostModel&, const CostModel&) = default;

 private:
  CostModel(int m, std::vector<Rational> c, std::vector<Rational> l)
      : max_fan_in_(m), complexity_(std::move(c)), latency_(std::move(l)) {}

  int max_fan_in_;
  std::vector<Rational> complexity_;
  std::vector<Rational> latency_;
};

/// Parses the JSON cost-model document
/// {"m": int, "c": [...], "l": [...]} where each factor is an integer, a
/// number, or a "p/q" string. Throws ConfigError.
CostModel parse_cost_model(std::string_view json_text);
CostModel load_cost_model(std::istream& in);
CostModel load_cost_model_file(const std::string& path);

/// Canonical full-form JSON (factors 0..m, rationals as strings). Parsing
/// the output yields an identical model.
std::string serialize_cost_model(const CostModel& model);

}  // namespace mpstruct
