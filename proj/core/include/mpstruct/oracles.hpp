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

// Brute-force reference implementations. Nothing here calls the dynamic
// programs in star_optimizer or iso_drt; the point is to disagree with
// them if they are wrong.

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpstruct/cost_model.hpp"
#include "mpstruct/iso_drt.hpp"
#include "mpstruct/star_tree.hpp"
#include "mpstruct/tree_shape.hpp"

namespace mpstruct {

struct EnumerationBudget {
  int max_star_leaves = 12;
  int max_drt_leaves = 8;
  int max_labeling_inputs = 5;
  /// Upper bound on objects produced by any single enumeration.
  std::size_t max_count = 2'000'000;
  std::chrono::milliseconds time_limit{120'000};

  /// Throws ConfigError unless every field is positive.
  void check() const;
};

/// Generation strategy; two independent ones exist for every tree family
/// so their outputs can be cross-checked.
enum class Strategy {
  growth,     // grow from the smallest object, deduplicate canonically
  partition,  // combine catalogued sub-branches as multisets
};

/// Every q (length m - 1) with 2 + sum_i i * q_i = n, ascending.
std::vector<DegreeVector> enumerate_degree_vectors(int n, int max_fan_in,
                                                   const EnumerationBudget& budget = {});

/// Every t (length m - 1) with prod_i (i + 1)^{w_i} = leaves, ascending.
std::vector<TypeVector> enumerate_type_vectors(int leaves, int max_fan_in);

/// All star trees with degree vector q, one per isomorphism class with
/// unlabelled leaves, sorted by canonical form and labelled depth-first.
/// Throws BudgetExceeded past `max_star_leaves` leaves or the count/time
/// limits, InfeasibleError for q = 0.
std::vector<StarTree> enumerate_star_trees(const DegreeVector& q, Strategy strategy,
                                           const EnumerationBudget& budget = {});

struct ShapeSet {
  TreeShape pool;
  std::vector<int> roots;
};

/// All rooted trees with `leaves` leaves and every internal fan-in in
/// [2, m], one per isomorphism class, sorted by canonical form.
ShapeSet enumerate_drts(int leaves, int max_fan_in, Strategy strategy,
                        const EnumerationBudget& budget = {});

/// All rooted trees whose internal nodes have rooted degree vector u
/// (u_i nodes with i + 1 children), sorted by canonical form.
ShapeSet enumerate_drts_with_degrees(const DegreeVector& u, const EnumerationBudget& budget = {});

/// Heaviest simple leaf-to-leaf path with node weight l_{degree-1}, by
/// walking every path.
Rational oracle_phi(const StarTree& t, const CostModel& costs);

/// Least maximum latency over forests of `trees` rooted trees with
/// combined degree vector u, from explicit tree enumeration.
Rational oracle_tau(const DegreeVector& u, int trees, const CostModel& costs,
                    const EnumerationBudget& budget = {});

/// Exhaustive search over every leaf labelling of every copy of d.
struct LabelingSearch {
  int n = 0;
  TypeVector type_vector;
  Rational bound;                  // sum_i n * w_i * c_{i+1}
  Rational best;                   // least complexity found
  std::size_t structures = 0;      // labelled combinations examined
  std::size_t achievers = 0;       // combinations with complexity == best
  bool consecutive_achieves = false;
  /// Least count of fan-in i+1 nodes seen, per i; compared against n * w_i.
  std::vector<std::size_t> min_fan_in_counts;
  bool below_bound = false;        // some structure beat a per-fan-in bound
};

LabelingSearch labeling_search(const IsoDrt& d, const CostModel& costs,
                               const EnumerationBudget& budget = {});

struct CheckResult {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::string dp_value;
  std::string oracle_value;
  bool pass = true;
  /// Empty when skipped is false.
  std::string skipped;
  /// Free-form witness (a canonical form or JSON fragment), set on
  /// mismatch and for reconstructed optima.
  std::string witness;
};

struct VerifyReport {
  int n = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const noexcept;
  std::size_t failures() const noexcept;
  /// {"n", "all_pass", "checks": [{"name", "params", "dp_value",
  /// "oracle_value", "pass", "skipped"?, "witness"?}]}
  std::string to_json() const;
};

/// Every optimizer-vs-oracle comparison affordable under `budget` for
/// input size n: the complexity optimum and its degree vectors, star
/// latency per optimal vector with its witness, tau spot checks, the
/// isomorphic latency optimum, exhaustive labelling of small DRTs and the
/// pruned latency against all DRTs. Checks beyond the budget are
/// recorded as skipped. Mismatches are data, never exceptions.
VerifyReport verify_report(int n, const CostModel& costs, const EnumerationBudget& budget = {});

}  // namespace mpstruct
