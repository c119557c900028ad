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

#include "mpstruct/star_tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "mpstruct/errors.hpp"

namespace mpstruct {

// ---------------------------------------------------------------------
// DegreeVector

int DegreeVector::internal_nodes() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

int DegreeVector::implied_input_size() const noexcept {
  int n = 2;
  for (std::size_t k = 0; k < counts.size(); ++k) n += static_cast<int>(k + 1) * counts[k];
  return n;
}

std::string DegreeVector::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(counts[k]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------
// StarTree

int StarTree::add_node(int leaf_label) {
  adjacency_.emplace_back();
  labels_.push_back(leaf_label);
  return static_cast<int>(adjacency_.size()) - 1;
}

void StarTree::add_edge(int a, int b) {
  if (a == b || a < 0 || b < 0 || a >= node_count() || b >= node_count()) {
    throw StructureError("invalid star-tree edge");
  }
  adjacency_[static_cast<std::size_t>(a)].push_back(b);
  adjacency_[static_cast<std::size_t>(b)].push_back(a);
}

int StarTree::input_size() const {
  int leaves = 0;
  for (int v = 0; v < node_count(); ++v) leaves += is_leaf(v) ? 1 : 0;
  return leaves;
}

int StarTree::find_leaf(int j) const {
  for (int v = 0; v < node_count(); ++v) {
    if (is_leaf(v) && leaf_label(v) == j) return v;
  }
  return -1;
}

std::vector<std::pair<int, int>> StarTree::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < node_count(); ++a) {
    for (const int b : neighbors(a)) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

void StarTree::label_leaves_depth_first() {
  if (adjacency_.empty()) return;
  int start = 0;
  for (int v = 0; v < node_count(); ++v) {
    if (!is_leaf(v)) {
      start = v;
      break;
    }
  }
  std::fill(labels_.begin(), labels_.end(), 0);
  int next = 1;
  std::vector<char> seen(adjacency_.size(), 0);
  std::vector<int> stack{start};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (seen[static_cast<std::size_t>(v)]) continue;
    seen[static_cast<std::size_t>(v)] = 1;
    if (is_leaf(v)) labels_[static_cast<std::size_t>(v)] = next++;
    const auto nb = neighbors(v);
    for (auto it = nb.rbegin(); it != nb.rend(); ++it) {
      if (!seen[static_cast<std::size_t>(*it)]) stack.push_back(*it);
    }
  }
}

std::vector<std::string> star_tree_problems(const StarTree& t) {
  std::vector<std::string> problems;
  const int count = t.node_count();
  if (count < 2) {
    problems.push_back("a star tree needs at least two nodes");
    return problems;
  }
  std::size_t edge_total = 0;
  for (int v = 0; v < count; ++v) edge_total += t.neighbors(v).size();
  if (edge_total / 2 != static_cast<std::size_t>(count - 1)) {
    problems.push_back("edge count " + std::to_string(edge_total / 2) + " != nodes - 1");
  }
  std::vector<char> seen(static_cast<std::size_t>(count), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const int u : t.neighbors(v)) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  if (reached != count) problems.push_back("tree is not connected");

  const int n = t.input_size();
  std::set<int> labels;
  for (int v = 0; v < count; ++v) {
    if (t.is_leaf(v)) {
      const int j = t.leaf_label(v);
      if (j < 1 || j > n) {
        problems.push_back("leaf " + std::to_string(v) + " has label " + std::to_string(j) +
                           " outside [1, " + std::to_string(n) + "]");
      } else if (!labels.insert(j).second) {
        problems.push_back("duplicate leaf label x" + std::to_string(j));
      }
    } else {
      if (t.leaf_label(v) != 0) {
        problems.push_back("internal node " + std::to_string(v) + " carries a label");
      }
      if (t.degree(v) < 3 || t.degree(v) > t.max_fan_in() + 1) {
        problems.push_back("internal node " + std::to_string(v) + " has degree " +
                           std::to_string(t.degree(v)) + ", expected [3, " +
                           std::to_string(t.max_fan_in() + 1) + "]");
      }
    }
  }
  return problems;
}

DegreeVector degree_vector_of(const StarTree& t) {
  auto q = DegreeVector::zero(t.max_fan_in());
  for (int v = 0; v < t.node_count(); ++v) {
    if (t.is_leaf(v)) continue;
    const int i = t.degree(v) - 2;
    if (i < 1 || i > t.max_fan_in() - 1) {
      throw StructureError("internal node degree " + std::to_string(t.degree(v)) +
                           " outside [3, m+1]");
    }
    ++q[i];
  }
  return q;
}

GrowthPolicy parse_growth_policy(std::string_view name) {
  if (name == "largest-first") return GrowthPolicy::largest_first;
  if (name == "smallest-first") return GrowthPolicy::smallest_first;
  if (name == "balanced") return GrowthPolicy::balanced;
  throw std::invalid_argument("unknown growth policy '" + std::string(name) +
                              "' (expected largest-first, smallest-first or balanced)");
}

std::string to_string(GrowthPolicy policy) {
  switch (policy) {
    case GrowthPolicy::largest_first:
      return "largest-first";
    case GrowthPolicy::smallest_first:
      return "smallest-first";
    case GrowthPolicy::balanced:
      return "balanced";
  }
  return "unknown";
}

StarTree star_tree_from_degree_vector(const DegreeVector& q, int n, GrowthPolicy policy) {
  if (std::any_of(q.counts.begin(), q.counts.end(), [](int c) { return c < 0; })) {
    throw InfeasibleError("degree vector " + q.to_string() + " has a negative entry");
  }
  if (q.is_zero()) {
    throw InfeasibleError("the zero degree vector has no star tree (it implies n = 2)");
  }
  if (q.implied_input_size() != n) {
    throw InfeasibleError("degree vector " + q.to_string() + " gives 2 + sum i*q_i = " +
                          std::to_string(q.implied_input_size()) + ", not n = " +
                          std::to_string(n));
  }
  auto remaining = q;
  const int m = q.max_fan_in();
  auto pick = [&]() {
    if (policy == GrowthPolicy::smallest_first) {
      for (int i = 1; i <= m - 1; ++i) {
        if (remaining[i] > 0) return i;
      }
    } else {
      for (int i = m - 1; i >= 1; --i) {
        if (remaining[i] > 0) return i;
      }
    }
    return 0;
  };

  StarTree t(m);
  std::vector<int> leaves;  // creation order; grown leaves are removed
  int i = pick();
  --remaining[i];
  const int center = t.add_node();
  for (int k = 0; k < i + 2; ++k) {
    const int leaf = t.add_node();
    t.add_edge(center, leaf);
    leaves.push_back(leaf);
  }
  std::size_t oldest = 0;
  while (!remaining.is_zero()) {
    i = pick();
    --remaining[i];
    int grow = 0;
    if (policy == GrowthPolicy::balanced) {
      grow = leaves[oldest];
      leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(oldest));
    } else {
      grow = leaves.back();
      leaves.pop_back();
    }
    for (int k = 0; k < i + 1; ++k) {
      const int leaf = t.add_node();
      t.add_edge(grow, leaf);
      leaves.push_back(leaf);
    }
  }
  t.label_leaves_depth_first();
  return t;
}

Dag structure_from_star_tree(const StarTree& t) {
  if (const auto problems = star_tree_problems(t); !problems.empty()) {
    throw StructureError("invalid star tree: " + problems.front());
  }
  const int n = t.input_size();
  DagBuilder builder(n, t.max_fan_in());
  std::map<std::pair<int, int>, NodeId> memo;
  std::function<NodeId(int, int)> branch = [&](int v, int from) -> NodeId {
    if (t.is_leaf(v)) return builder.input(t.leaf_label(v));
    if (const auto it = memo.find({v, from}); it != memo.end()) return it->second;
    std::vector<NodeId> kids;
    for (const int u : t.neighbors(v)) {
      if (u != from) kids.push_back(branch(u, v));
    }
    const auto id = builder.node(std::move(kids));
    memo.emplace(std::make_pair(v, from), id);
    return id;
  };
  for (int j = 1; j <= n; ++j) {
    const int leaf = t.find_leaf(j);
    const int a = t.neighbors(leaf).front();
    std::vector<NodeId> kids;
    if (t.is_leaf(a)) {
      kids.push_back(builder.input(t.leaf_label(a)));
    } else {
      for (const int u : t.neighbors(a)) {
        if (u != leaf) kids.push_back(branch(u, a));
      }
    }
    builder.output(j, std::move(kids));
  }
  return std::move(builder).release();
}

Rational star_complexity(const DegreeVector& q, const CostModel& costs) {
  if (q.max_fan_in() > costs.max_fan_in()) {
    throw std::invalid_argument("degree vector " + q.to_string() + " needs fan-in " +
                                std::to_string(q.max_fan_in()) + " > m = " +
                                std::to_string(costs.max_fan_in()));
  }
  if (q.is_zero()) {
    throw InfeasibleError("the zero degree vector has no star tree (it implies n = 2)");
  }
  Rational total(0);
  for (int i = 1; i <= q.max_fan_in() - 1; ++i) {
    if (q[i] < 0) throw InfeasibleError("degree vector " + q.to_string() + " has a negative entry");
    total += Rational(i + 2) * q[i] * costs.complexity_factor(i + 1);
  }
  return total;
}

// ---------------------------------------------------------------------
// Latency

namespace {

/// Memoised l(D(u, from, T)) over all directed edges.
class BranchLatencies {
 public:
  BranchLatencies(const StarTree& t, const CostModel& costs) : t_(t), costs_(costs) {
    memo_.resize(static_cast<std::size_t>(t.node_count()));
    for (int v = 0; v < t.node_count(); ++v) {
      if (t.degree(v) - 1 > costs.max_fan_in()) {
        throw StructureError("star-tree node of degree " + std::to_string(t.degree(v)) +
                             " needs fan-in above m = " + std::to_string(costs.max_fan_in()));
      }
      memo_[static_cast<std::size_t>(v)].resize(t.neighbors(v).size());
    }
  }

  Rational weight(int v) const { return costs_.latency_factor(t_.degree(v) - 1); }

  const Rational& branch(int u, int from) {
    const auto nb = t_.neighbors(u);
    const auto slot = static_cast<std::size_t>(std::find(nb.begin(), nb.end(), from) - nb.begin());
    auto& cell = memo_[static_cast<std::size_t>(u)].at(slot);
    if (!cell) {
      Rational longest(0);
      for (const int z : nb) {
        if (z != from) longest = std::max(longest, branch(z, u));
      }
      cell = longest + weight(u);
    }
    return *cell;
  }

 private:
  const StarTree& t_;
  const CostModel& costs_;
  std::vector<std::vector<std::optional<Rational>>> memo_;
};

}  // namespace

Rational branch_latency(const StarTree& t, int a, int b, const CostModel& costs) {
  const auto nb = t.neighbors(a);
  if (std::find(nb.begin(), nb.end(), b) == nb.end()) {
    throw std::invalid_argument("branch_latency needs adjacent nodes");
  }
  BranchLatencies table(t, costs);
  return table.branch(a, b);
}

Rational star_tree_latency(const StarTree& t, const CostModel& costs) {
  BranchLatencies table(t, costs);
  Rational worst(0);
  for (const auto& [a, b] : t.edges()) {
    worst = std::max(worst, table.branch(a, b) + table.branch(b, a));
  }
  return worst;
}

DiameterSplit diameter_split(const StarTree& t, const CostModel& costs) {
  BranchLatencies table(t, costs);
  const auto edges = t.edges();
  for (const bool strict : {true, false}) {
    for (const auto& [x, y] : edges) {
      for (const auto& [a, b] : {std::pair{x, y}, std::pair{y, x}}) {
        const auto& toward_a = table.branch(a, b);
        const auto& toward_b = table.branch(b, a);
        const bool first = toward_a - table.weight(a) <= toward_b;
        const bool second = strict ? toward_a > toward_b : toward_a >= toward_b;
        if (first && second) return {a, b, toward_a, toward_b, strict};
      }
    }
  }
  throw std::logic_error("no diameter split edge found; tree is malformed");
}

// ---------------------------------------------------------------------
// Isomorphism and serialization

std::string unlabeled_canonical_form(const StarTree& t) {
  std::function<std::string(int, int)> rooted = [&](int v, int from) {
    if (t.is_leaf(v) && from != -1) return std::string("L");
    std::vector<std::string> parts;
    for (const int u : t.neighbors(v)) {
      if (u != from) parts.push_back(rooted(u, v));
    }
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto& p : parts) out += p;
    return out + ")";
  };
  std::optional<std::string> best;
  for (int v = 0; v < t.node_count(); ++v) {
    if (t.is_leaf(v)) continue;
    auto form = rooted(v, -1);
    if (!best || form < *best) best = std::move(form);
  }
  return best ? *best : std::string("L-L");
}

std::string star_tree_to_json(const StarTree& t) {
  nlohmann::ordered_json doc;
  doc["n"] = t.input_size();
  doc["m"] = t.max_fan_in();
  doc["directed"] = false;
  auto nodes = nlohmann::ordered_json::array();
  for (int v = 0; v < t.node_count(); ++v) {
    nlohmann::ordered_json node;
    node["id"] = v;
    if (t.is_leaf(v)) {
      node["label"] = "x" + std::to_string(t.leaf_label(v));
    } else {
      node["label"] = nullptr;
    }
    nodes.push_back(std::move(node));
  }
  doc["nodes"] = std::move(nodes);
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [a, b] : t.edges()) edges.push_back(nlohmann::ordered_json::array({a, b}));
  doc["edges"] = std::move(edges);
  return doc.dump() + "\n";
}

StarTree parse_star_tree_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "invalid JSON");
  }
  if (!doc.is_object() || !doc.contains("m") || !doc.at("m").is_number_integer()) {
    throw ParseError("/m", "missing or not an integer");
  }
  if (doc.value("directed", true)) {
    throw ParseError("/directed", "star trees must be serialized with \"directed\": false");
  }
  StarTree t(doc.at("m").get<int>());
  std::map<std::int64_t, int> ids;
  const auto& nodes = doc.at("nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto where = "/nodes/" + std::to_string(i);
    const auto& node = nodes[i];
    if (!node.contains("id") || !node.at("id").is_number_integer()) {
      throw ParseError(where, "node needs an integer \"id\"");
    }
    int label = 0;
    if (node.contains("label") && node.at("label").is_string()) {
      const auto s = node.at("label").get<std::string>();
      if (s.size() < 2 || s[0] != 'x') throw ParseError(where + "/label", "expected x<j>");
      label = std::stoi(s.substr(1));
    }
    if (!ids.emplace(node.at("id").get<std::int64_t>(), t.add_node(label)).second) {
      throw ParseError(where + "/id", "duplicate node id");
    }
  }
  const auto& edges = doc.at("edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto where = "/edges/" + std::to_string(i);
    const auto& e = edges[i];
    if (!e.is_array() || e.size() != 2) throw ParseError(where, "edge must be [a, b]");
    const auto a = ids.find(e[0].get<std::int64_t>());
    const auto b = ids.find(e[1].get<std::int64_t>());
    if (a == ids.end() || b == ids.end()) throw ParseError(where, "unknown node id");
    t.add_edge(a->second, b->second);
  }
  return t;
}

}  // namespace mpstruct
