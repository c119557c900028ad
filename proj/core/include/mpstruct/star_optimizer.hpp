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

#include <cstddef>
#include <vector>

#include "mpstruct/cost_model.hpp"
#include "mpstruct/star_tree.hpp"
#include "mpstruct/structure.hpp"
#include "mpstruct/tree_shape.hpp"

namespace mpstruct {

// ---------------------------------------------------------------------
// Complexity-optimal degree vectors
// ---------------------------------------------------------------------

/// Minimum star-structure complexity for every input size 2..n.
struct ComplexityTable {
  int max_fan_in = 2;
  /// best[i] for i in [2, n]; entries 0 and 1 are unused.
  std::vector<Rational> best;
  /// choices[i]: every t in [1, m-1] attaining best[i], ascending.
  std::vector<std::vector<int>> choices;
  /// Relaxations performed; grows linearly in n for fixed m.
  std::size_t operations = 0;

  int max_input_size() const noexcept { return static_cast<int>(best.size()) - 1; }
  const Rational& min_complexity(int n) const { return best.at(static_cast<std::size_t>(n)); }
};

/// best[2] = 0 and best[i] = min_t best[i - t] + (t + 2) c_{t+1} over
/// t in [1, m-1], t <= i - 2. O(m n). Throws std::invalid_argument if n < 2.
ComplexityTable min_star_complexity(int n, const CostModel& costs);

/// Backtracks the table. With `all` every optimal degree vector is
/// returned (ascending); otherwise the single vector obtained by always
/// taking the smallest optimal t.
std::vector<DegreeVector> optimal_degree_vectors(const ComplexityTable& table, int n, bool all);

// ---------------------------------------------------------------------
// Forest latency table
// ---------------------------------------------------------------------

/// tau(u, t): least achievable maximum latency over forests of t disjoint
/// rooted trees whose internal nodes have combined degree vector u (for
/// rooted trees q_i counts nodes with i + 1 children), for every u <= bound
/// and t in [1, m].
class TauTable {
 public:
  /// Fills the table in order of non-decreasing |u|_1.
  TauTable(const DegreeVector& bound, const CostModel& costs);

  const DegreeVector& bound() const noexcept { return bound_; }
  int max_fan_in() const noexcept { return max_fan_in_; }

  const Rational& value(const DegreeVector& u, int trees) const;
  /// For a single tree: the i whose root has i + 1 children in the optimum
  /// (smallest such i); 0 for u = 0.
  int root_choice(const DegreeVector& u) const;
  /// For trees > 1: degree vector of the first tree in the optimum
  /// (smallest in index order).
  DegreeVector first_tree(const DegreeVector& u, int trees) const;

  /// Appends `trees` rooted trees realising tau(u, trees) to `pool` and
  /// returns their roots.
  std::vector<int> forest_witness(const DegreeVector& u, int trees, TreeShape& pool) const;

  std::size_t entries() const noexcept { return values_.size(); }
  std::size_t operations() const noexcept { return operations_; }

 private:
  std::size_t index_of(const DegreeVector& u) const;
  DegreeVector vector_at(std::size_t index) const;
  std::size_t slot(std::size_t index, int trees) const {
    return index * static_cast<std::size_t>(max_fan_in_) + static_cast<std::size_t>(trees - 1);
  }

  DegreeVector bound_;
  int max_fan_in_;
  std::vector<std::size_t> strides_;
  std::vector<Rational> values_;
  std::vector<std::size_t> argmin_;  // i for trees == 1, index of u' otherwise
  std::size_t operations_ = 0;
};

// ---------------------------------------------------------------------
// Latency-optimal star tree for a degree vector
// ---------------------------------------------------------------------

struct StarLatencyResult {
  Rational value;
  /// Degree vector u of the heavier branch D1 and the i with D1's root
  /// having i + 1 children; the lighter branch has degree vector q - u.
  DegreeVector heavy_branch;
  int root_choice = 0;
  /// Branch latencies of the witness split.
  Rational heavy_latency;
  Rational light_latency;
  /// Whether the witness satisfies l(D1) > l(D2) strictly. Ties are
  /// admitted as l(D1) >= l(D2); see min_star_latency.
  bool strict = true;
  StarTree tree;
  std::size_t candidates = 0;
};

/// Minimum star-tree latency over all star trees with degree vector q.
///
/// Scans every split (u, i): D1 has degree vector u and a root with i + 1
/// children, D2 has degree vector q - u. A split is admitted when
///   tau(u - e_i, i + 1) <= tau(q - u, 1)            and
///   tau(u - e_i, i + 1) + l_{i+1} >= tau(q - u, 1),
/// and contributes tau(u - e_i, i + 1) + l_{i+1} + tau(q - u, 1). Among
/// minimisers a split with strict inequality in the second test is
/// preferred, then the lexicographically smallest (u, i). The witness tree
/// is rebuilt from the table argmins.
///
/// Throws InfeasibleError for the zero vector.
StarLatencyResult min_star_latency(const DegreeVector& q, const CostModel& costs);

struct StarSynthesis {
  Rational complexity;
  Rational latency;
  DegreeVector degree_vector;
  std::vector<DegreeVector> optimal_degree_vectors;
  StarTree tree;
  Dag structure;
};

/// Complexity first, then latency: every complexity-optimal degree vector
/// is scored with min_star_latency and the best one (ties: smallest q) is
/// turned into a structure. Throws std::invalid_argument if n < 3.
StarSynthesis complexity_then_latency(int n, const CostModel& costs);

}  // namespace mpstruct
