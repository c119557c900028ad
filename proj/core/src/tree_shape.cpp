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

#include "mpstruct/tree_shape.hpp"

#include <algorithm>
#include <stdexcept>

namespace mpstruct {

int TreeShape::add_leaf() {
  children_.emplace_back();
  return static_cast<int>(children_.size()) - 1;
}

int TreeShape::add_node(std::vector<int> children) {
  for (const int c : children) {
    if (c < 0 || static_cast<std::size_t>(c) >= children_.size()) {
      throw std::out_of_range("tree shape child out of range");
    }
  }
  children_.push_back(std::move(children));
  return static_cast<int>(children_.size()) - 1;
}

int TreeShape::leaf_count(int root) const {
  if (is_leaf(root)) return 1;
  int total = 0;
  for (const int c : children(root)) total += leaf_count(c);
  return total;
}

Rational TreeShape::latency(int root, const CostModel& costs) const {
  if (is_leaf(root)) return Rational(0);
  Rational longest(0);
  for (const int c : children(root)) longest = std::max(longest, latency(c, costs));
  return longest + costs.latency_factor(static_cast<int>(children(root).size()));
}

DegreeVector TreeShape::degree_vector(int root, int max_fan_in) const {
  auto q = DegreeVector::zero(max_fan_in);
  std::vector<int> stack{root};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (is_leaf(v)) continue;
    const int i = static_cast<int>(children(v).size()) - 1;
    if (i < 1 || i > max_fan_in - 1) throw std::out_of_range("fan-in outside [2, m]");
    ++q[i];
    for (const int c : children(v)) stack.push_back(c);
  }
  return q;
}

std::string TreeShape::canonical_form(int root) const {
  if (is_leaf(root)) return "L";
  std::vector<std::string> parts;
  for (const int c : children(root)) parts.push_back(canonical_form(c));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  return out + ")";
}

std::vector<int> TreeShape::leaves_in_order(int root) const {
  std::vector<int> out;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (is_leaf(v)) {
      out.push_back(v);
      continue;
    }
    const auto ch = children(v);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

int TreeShape::height(int root) const {
  int h = 0;
  for (const int c : children(root)) h = std::max(h, height(c) + 1);
  return h;
}

StarTree join_branches(const TreeShape& pool, int heavy_root, int light_root, int max_fan_in) {
  StarTree t(max_fan_in);
  auto copy = [&](auto&& self, int v) -> int {
    const int id = t.add_node();
    for (const int c : pool.children(v)) t.add_edge(id, self(self, c));
    return id;
  };
  const int a = copy(copy, heavy_root);
  const int b = copy(copy, light_root);
  t.add_edge(a, b);
  t.label_leaves_depth_first();
  return t;
}

}  // namespace mpstruct
