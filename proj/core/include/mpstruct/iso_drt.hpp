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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpstruct/cost_model.hpp"
#include "mpstruct/structure.hpp"
#include "mpstruct/tree_shape.hpp"

namespace mpstruct {

/// Level counts of an isomorphic DRT: `counts[k]` is the number of levels
/// whose nodes all have k + 2 children, for k in [0, m-2].
struct TypeVector {
  std::vector<int> counts;

  TypeVector() = default;
  explicit TypeVector(std::vector<int> c) : counts(std::move(c)) {}
  static TypeVector zero(int max_fan_in) {
    return TypeVector(std::vector<int>(static_cast<std::size_t>(max_fan_in - 1), 0));
  }

  int max_fan_in() const noexcept { return static_cast<int>(counts.size()) + 1; }
  /// Number of levels with i + 1 children per node (1-based i, as in w_i).
  int operator[](int i) const { return counts.at(static_cast<std::size_t>(i - 1)); }
  int& operator[](int i) { return counts.at(static_cast<std::size_t>(i - 1)); }
  int levels() const noexcept;
  /// prod_i (i + 1)^{w_i}; throws std::overflow_error past 2^62.
  std::int64_t leaf_count() const;
  std::string to_string() const;

  friend auto operator<=>(const TypeVector&, const TypeVector&) = default;
};

/// A rooted tree in which every node at depth k has exactly
/// `level_degrees[k]` children (so all sibling subtrees are isomorphic).
class IsoDrt {
 public:
  IsoDrt() = default;
  /// Throws std::invalid_argument unless every degree is in [2, m].
  IsoDrt(std::vector<int> level_degrees, int max_fan_in);

  int max_fan_in() const noexcept { return max_fan_in_; }
  const std::vector<int>& level_degrees() const noexcept { return level_degrees_; }
  int depth() const noexcept { return static_cast<int>(level_degrees_.size()); }
  std::int64_t leaf_count() const;

  /// Materialises the tree; children are stored in creation order, which
  /// defines the left-to-right leaf order. Returns the root.
  int build(TreeShape& pool) const;

  friend bool operator==(const IsoDrt&, const IsoDrt&) = default;

 private:
  std::vector<int> level_degrees_;
  int max_fan_in_ = 2;
};

/// Recognises an isomorphic DRT; nullopt if some node has non-isomorphic
/// child subtrees or a fan-in outside [2, m].
std::optional<IsoDrt> as_iso_drt(const TreeShape& pool, int root, int max_fan_in);

/// The DRT with the degree multiset of `w`. `level_order` lists the
/// per-level child counts top-down; by default they are non-increasing.
/// Throws std::invalid_argument if `level_order` is not a permutation of
/// the multiset of w.
IsoDrt iso_drt_from_type_vector(const TypeVector& w,
                                const std::optional<std::vector<int>>& level_order = std::nullopt);

TypeVector type_vector_of(const IsoDrt& d);

/// labeling[j-1] lists the input indices assigned to copy j's leaves,
/// left to right.
using Labeling = std::vector<std::vector<int>>;

/// Copy j receives x_{j+1}, ..., x_n, x_1, ..., x_{j-1}.
/// Throws std::invalid_argument unless d has n - 1 leaves.
Labeling consecutive_labeling(const IsoDrt& d, int n);

/// Labels n copies of d (n = labeling.size()), roots copy j at y_j and
/// unites them. Throws std::invalid_argument if some copy is not a
/// bijection onto X \ {x_j}.
Dag structure_from_iso_drt(const IsoDrt& d, const Labeling& labeling);

/// sum_i w_i * l_{i+1}.
Rational iso_latency(const TypeVector& w, const CostModel& costs);
/// sum_i n * w_i * c_{i+1}, the complexity of the consecutively labelled
/// structure.
Rational iso_complexity(const TypeVector& w, int n, const CostModel& costs);

struct IsoLatencyResult {
  Rational value;
  /// Every type vector attaining `value`, ascending.
  std::vector<TypeVector> optimal;
  /// The optimum of least complexity (ties: smallest vector).
  TypeVector chosen;
  Rational complexity;
  std::size_t operations = 0;
};

/// Minimum latency over isomorphic DRTs with n - 1 leaves:
/// L(1) = 0, L(k) = min over divisors t in [2, m] of L(k / t) + l_t.
/// Throws std::invalid_argument if n < 3, InfeasibleError if n - 1 has no
/// factorisation over [2, m].
IsoLatencyResult min_iso_latency(int n, const CostModel& costs);

struct IsoSynthesis {
  Rational latency;
  Rational complexity;
  TypeVector type_vector;
  IsoDrt drt;
  Dag structure;
  /// n' >= n: the input size before pruning (equal to n when none).
  int expanded_size = 0;
  std::vector<std::string> prune_log;
};

/// Latency-optimal isomorphic synthesis for feasible n, consecutively
/// labelled. Same errors as min_iso_latency.
IsoSynthesis synthesize_isomorphic(int n, const CostModel& costs,
                                   const std::optional<std::vector<int>>& level_order = std::nullopt);

/// Lower-bound recursion Lambda(1) = 0, Lambda(k) = min_t l_t +
/// Lambda(ceil(k / t)), evaluated at k = n - 1. The witness type vector
/// gives n' - 1 = prod (i + 1)^{w_i} >= n - 1; the n' structure is built
/// with consecutive labelling and pruned to n inputs. Among optimal
/// vectors the smallest n' wins, then the least complexity, then the
/// smallest vector. Throws std::invalid_argument if n < 3.
IsoSynthesis min_latency_pruned(int n, const CostModel& costs);

}  // namespace mpstruct
