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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpstruct/cost_model.hpp"
#include "mpstruct/structure.hpp"

namespace mpstruct {

/// Internal-node degree counts of a star tree: `counts[k]` is the number
/// of internal nodes of (undirected) degree k + 3, for k in [0, m-2].
struct DegreeVector {
  std::vector<int> counts;

  DegreeVector() = default;
  explicit DegreeVector(std::vector<int> c) : counts(std::move(c)) {}
  static DegreeVector zero(int max_fan_in) {
    return DegreeVector(std::vector<int>(static_cast<std::size_t>(max_fan_in - 1), 0));
  }

  int max_fan_in() const noexcept { return static_cast<int>(counts.size()) + 1; }
  /// Count of internal nodes of degree i + 2 (1-based i, as in q_i).
  int operator[](int i) const { return counts.at(static_cast<std::size_t>(i - 1)); }
  int& operator[](int i) { return counts.at(static_cast<std::size_t>(i - 1)); }
  int internal_nodes() const noexcept;
  /// The only leaf count a star tree with these degrees can have:
  /// 2 + sum_i i * q_i.
  int implied_input_size() const noexcept;
  bool is_zero() const noexcept { return internal_nodes() == 0; }
  std::string to_string() const;

  friend auto operator<=>(const DegreeVector&, const DegreeVector&) = default;
};

/// Undirected tree whose leaves are the inputs x_1..x_n and whose internal
/// nodes have degree in [3, m+1]. Node ids are dense; leaves carry their
/// 1-based input index, internal nodes carry 0.
class StarTree {
 public:
  StarTree() = default;
  explicit StarTree(int max_fan_in) : max_fan_in_(max_fan_in) {}

  int max_fan_in() const noexcept { return max_fan_in_; }
  int add_node(int leaf_label = 0);
  void add_edge(int a, int b);
  void set_leaf_label(int v, int label) { labels_.at(static_cast<std::size_t>(v)) = label; }

  int node_count() const noexcept { return static_cast<int>(adjacency_.size()); }
  std::span<const int> neighbors(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  bool is_leaf(int v) const { return degree(v) == 1; }
  int leaf_label(int v) const { return labels_.at(static_cast<std::size_t>(v)); }
  /// Number of degree-1 nodes.
  int input_size() const;
  /// Node carrying input label j, or -1.
  int find_leaf(int j) const;
  std::vector<std::pair<int, int>> edges() const;

  /// Labels the leaves x_1..x_n in depth-first order from the first
  /// internal node (or node 0 when there is none).
  void label_leaves_depth_first();

 private:
  int max_fan_in_ = 2;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> labels_;
};

/// Empty when `t` is a valid star tree; otherwise one line per problem.
std::vector<std::string> star_tree_problems(const StarTree& t);

DegreeVector degree_vector_of(const StarTree& t);

/// Resolution of the free choices when growing a tree from a degree vector.
enum class GrowthPolicy {
  largest_first,   // largest degree first, grow at the newest leaf
  smallest_first,  // smallest degree first, grow at the newest leaf
  balanced,        // largest degree first, grow at the oldest leaf
};

GrowthPolicy parse_growth_policy(std::string_view name);
std::string to_string(GrowthPolicy policy);

/// Grows a star tree with exactly the degree vector `q`, starting from one
/// internal node and repeatedly hanging new leaves off an existing leaf.
/// Throws InfeasibleError unless n = 2 + sum_i i * q_i and q is non-zero.
StarTree star_tree_from_degree_vector(const DegreeVector& q, int n,
                                      GrowthPolicy policy = GrowthPolicy::largest_first);

/// The star-tree-based structure: for every leaf x_j, the tree re-rooted at
/// x_j's neighbour with x_j removed computes y_j; all n of them are united.
Dag structure_from_star_tree(const StarTree& t);

/// Complexity of any star-tree-based structure with degree vector q:
/// sum_i (i + 2) * q_i * c_{i+1}. Throws InfeasibleError for q = 0 and
/// std::invalid_argument if q has more entries than the model allows.
Rational star_complexity(const DegreeVector& q, const CostModel& costs);

/// Latency of the branch D(a, b, T): the subtree hanging off a when the
/// tree is rooted at its neighbour b. Node weight is l_{degree - 1}.
Rational branch_latency(const StarTree& t, int a, int b, const CostModel& costs);

/// Star-tree latency: the heaviest simple path with node weight
/// l_{degree-1}; equals the latency of the star-tree-based structure.
/// Computed from the two branch latencies of every edge.
Rational star_tree_latency(const StarTree& t, const CostModel& costs);

struct DiameterSplit {
  int a = -1;
  int b = -1;
  Rational toward_a;  // l(D(a, b, T))
  Rational toward_b;  // l(D(b, a, T))
  /// True when toward_a > toward_b holds strictly; false only for the tie
  /// fallback (see diameter_split).
  bool strict = true;
};

/// An edge (a, b) with l(D(a,b)) - l_{d(a)-1} <= l(D(b,a)) and
/// l(D(a,b)) > l(D(b,a)); the two branch latencies then sum to the tree
/// latency. When ties make the strict inequality unsatisfiable (e.g. a
/// symmetric tree or zero latency factors) the first edge satisfying the
/// non-strict version is returned with `strict == false`.
DiameterSplit diameter_split(const StarTree& t, const CostModel& costs);

/// Canonical spelling with leaves treated as indistinguishable; equal
/// strings iff the trees are isomorphic as unlabelled-leaf trees.
std::string unlabeled_canonical_form(const StarTree& t);

/// JSON node/edge form with "directed": false.
std::string star_tree_to_json(const StarTree& t);
StarTree parse_star_tree_json(std::string_view text);

}  // namespace mpstruct
