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

#include <span>
#include <string>
#include <vector>

#include "mpstruct/cost_model.hpp"
#include "mpstruct/star_tree.hpp"

namespace mpstruct {

/// Pool of unlabelled rooted tree shapes (leaves have no children). Child
/// order is kept as inserted, which fixes a left-to-right leaf order.
class TreeShape {
 public:
  int add_leaf();
  int add_node(std::vector<int> children);

  std::size_t size() const noexcept { return children_.size(); }
  std::span<const int> children(int v) const { return children_.at(static_cast<std::size_t>(v)); }
  bool is_leaf(int v) const { return children(v).empty(); }

  int leaf_count(int root) const;
  /// Largest sum of l_{children} on a root-to-leaf path.
  Rational latency(int root, const CostModel& costs) const;
  /// Rooted degree vector: entry i counts nodes with i + 1 children.
  DegreeVector degree_vector(int root, int max_fan_in) const;
  /// Sorted-children spelling; equal iff isomorphic as rooted trees.
  std::string canonical_form(int root) const;
  /// Leaves of the subtree, left to right.
  std::vector<int> leaves_in_order(int root) const;
  int height(int root) const;

 private:
  std::vector<std::vector<int>> children_;
};

/// Joins two rooted shapes by an edge between their roots and returns the
/// resulting undirected star tree with leaves labelled depth-first.
StarTree join_branches(const TreeShape& pool, int heavy_root, int light_root, int max_fan_in);

}  // namespace mpstruct
