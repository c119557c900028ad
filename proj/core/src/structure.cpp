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

#include "mpstruct/structure.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "mpstruct/errors.hpp"

namespace mpstruct {

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t value) noexcept {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_label(const NodeLabel& label) noexcept {
  return (static_cast<std::size_t>(label.kind) << 32) ^ static_cast<std::size_t>(label.index);
}

std::string describe(const Dag& g, NodeId v) {
  const auto text = g.label(v).to_string();
  return text.empty() ? "#" + std::to_string(v) : text;
}

}  // namespace

std::string NodeLabel::to_string() const {
  switch (kind) {
    case Kind::input:
      return "x" + std::to_string(index);
    case Kind::output:
      return "y" + std::to_string(index);
    case Kind::internal:
      break;
  }
  return {};
}

// ---------------------------------------------------------------------
// Dag

NodeId Dag::add_node(NodeLabel label) {
  const auto id = static_cast<NodeId>(labels_.size());
  labels_.push_back(label);
  children_.emplace_back();
  parents_.emplace_back();
  return id;
}

void Dag::add_edge(NodeId child, NodeId parent) {
  if (child >= labels_.size() || parent >= labels_.size()) {
    throw StructureError("edge references unknown node");
  }
  if (child == parent) {
    throw StructureError("self-loop on " + describe(*this, child));
  }
  if (has_edge(child, parent)) {
    throw StructureError("repeated edge " + describe(*this, child) + " -> " +
                         describe(*this, parent));
  }
  children_[parent].push_back(child);
  parents_[child].push_back(parent);
}

void Dag::remove_edge(NodeId child, NodeId parent) {
  if (!has_edge(child, parent)) {
    throw StructureError("no edge " + std::to_string(child) + " -> " + std::to_string(parent));
  }
  auto& ch = children_[parent];
  ch.erase(std::find(ch.begin(), ch.end(), child));
  auto& pa = parents_[child];
  pa.erase(std::find(pa.begin(), pa.end(), parent));
}

void Dag::set_label(NodeId v, NodeLabel label) { labels_.at(v) = label; }

bool Dag::has_edge(NodeId child, NodeId parent) const {
  if (parent >= children_.size()) return false;
  const auto& ch = children_[parent];
  return std::find(ch.begin(), ch.end(), child) != ch.end();
}

std::size_t Dag::edge_count() const noexcept {
  std::size_t total = 0;
  for (const auto& ch : children_) total += ch.size();
  return total;
}

std::vector<std::pair<NodeId, NodeId>> Dag::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count());
  for (NodeId p = 0; p < children_.size(); ++p) {
    for (const auto c : children_[p]) out.emplace_back(c, p);
  }
  return out;
}

std::optional<NodeId> Dag::find_input(int j) const {
  for (NodeId v = 0; v < labels_.size(); ++v) {
    if (labels_[v] == NodeLabel::input(j)) return v;
  }
  return std::nullopt;
}

std::optional<NodeId> Dag::find_output(int j) const {
  for (NodeId v = 0; v < labels_.size(); ++v) {
    if (labels_[v] == NodeLabel::output(j)) return v;
  }
  return std::nullopt;
}

std::optional<std::vector<NodeId>> Dag::topological_order() const {
  const auto count = labels_.size();
  std::vector<std::size_t> pending(count);
  std::deque<NodeId> ready;
  for (NodeId v = 0; v < count; ++v) {
    pending[v] = children_[v].size();
    if (pending[v] == 0) ready.push_back(v);
  }
  std::vector<NodeId> order;
  order.reserve(count);
  while (!ready.empty()) {
    const auto v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (const auto p : parents_[v]) {
      if (--pending[p] == 0) ready.push_back(p);
    }
  }
  if (order.size() != count) return std::nullopt;
  return order;
}

std::vector<std::size_t> fan_in_histogram(const Dag& g) {
  std::vector<std::size_t> hist(static_cast<std::size_t>(std::max(g.max_fan_in(), 0)) + 1, 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto d = static_cast<std::size_t>(g.fan_in(v));
    if (d >= hist.size()) hist.resize(d + 1, 0);
    ++hist[d];
  }
  return hist;
}

// ---------------------------------------------------------------------
// Canonical keys

std::size_t KeyInterner::EntryHash::operator()(const Entry& e) const noexcept {
  auto seed = hash_label(e.label);
  for (const auto k : e.children) seed = hash_combine(seed, k);
  return seed;
}

KeyId KeyInterner::intern(NodeLabel label, std::vector<KeyId> child_keys) {
  std::sort(child_keys.begin(), child_keys.end());
  Entry entry{label, std::move(child_keys)};
  if (const auto it = index_.find(entry); it != index_.end()) {
    return it->second;
  }
  const auto id = static_cast<KeyId>(entries_.size());
  entries_.push_back(entry);
  index_.emplace(std::move(entry), id);
  return id;
}

std::vector<KeyId> canonical_keys(const Dag& g, KeyInterner& interner) {
  const auto order = g.topological_order();
  if (!order) {
    throw StructureError("canonical keys need an acyclic graph");
  }
  std::vector<KeyId> keys(g.node_count());
  std::vector<KeyId> child_keys;
  for (const auto v : *order) {
    child_keys.clear();
    for (const auto c : g.children(v)) child_keys.push_back(keys[c]);
    keys[v] = interner.intern(g.label(v), child_keys);
  }
  return keys;
}

KeyId canonical_key(const Dag& g, NodeId root, KeyInterner& interner) {
  return canonical_keys(g, interner).at(root);
}

std::string canonical_form(const Dag& g, NodeId root) {
  std::unordered_map<NodeId, std::string> memo;
  std::vector<NodeId> visiting;
  std::function<const std::string&(NodeId)> form = [&](NodeId v) -> const std::string& {
    if (const auto it = memo.find(v); it != memo.end()) return it->second;
    if (std::find(visiting.begin(), visiting.end(), v) != visiting.end()) {
      throw StructureError("canonical form of a cyclic graph");
    }
    visiting.push_back(v);
    std::vector<std::string> parts;
    for (const auto c : g.children(v)) parts.push_back(form(c));
    visiting.pop_back();
    std::sort(parts.begin(), parts.end());
    std::string out = g.label(v).is_input() ? g.label(v).to_string() : g.label(v).to_string() + "(";
    if (!g.label(v).is_input()) {
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ',';
        out += parts[i];
      }
      out += ')';
    }
    return memo.emplace(v, std::move(out)).first->second;
  };
  return form(root);
}

// ---------------------------------------------------------------------
// DagBuilder

std::size_t DagBuilder::KeyHash::operator()(const Key& k) const noexcept {
  auto seed = hash_label(k.label);
  for (const auto c : k.children) seed = hash_combine(seed, c);
  return seed;
}

NodeId DagBuilder::intern(NodeLabel label, std::vector<NodeId> children) {
  std::sort(children.begin(), children.end());
  if (std::adjacent_find(children.begin(), children.end()) != children.end()) {
    throw StructureError("node would take the same subtree twice as a child");
  }
  for (const auto c : children) {
    if (c >= dag_.node_count()) throw StructureError("child references unknown node");
  }
  if (dag_.max_fan_in() > 0 && static_cast<int>(children.size()) > dag_.max_fan_in()) {
    throw StructureError("fan-in " + std::to_string(children.size()) + " exceeds m = " +
                         std::to_string(dag_.max_fan_in()));
  }
  Key key{label, std::move(children)};
  if (const auto it = index_.find(key); it != index_.end()) {
    if (!label.is_input()) ++merges_;
    return it->second;
  }
  const auto id = dag_.add_node(label);
  for (const auto c : key.children) dag_.add_edge(c, id);
  index_.emplace(std::move(key), id);
  return id;
}

NodeId DagBuilder::input(int j) { return intern(NodeLabel::input(j), {}); }

NodeId DagBuilder::node(std::vector<NodeId> children) {
  if (children.size() < 2) {
    throw StructureError("computation node needs at least two children");
  }
  return intern(NodeLabel::internal(), std::move(children));
}

NodeId DagBuilder::output(int j, std::vector<NodeId> children) {
  if (children.empty()) {
    throw StructureError("output y" + std::to_string(j) + " has no children");
  }
  return intern(NodeLabel::output(j), std::move(children));
}

std::vector<NodeId> DagBuilder::absorb(const Dag& other) {
  const auto order = other.topological_order();
  if (!order) {
    throw StructureError("cannot absorb a cyclic graph");
  }
  std::vector<NodeId> map(other.node_count());
  std::vector<NodeId> kids;
  for (const auto v : *order) {
    const auto& label = other.label(v);
    kids.clear();
    for (const auto c : other.children(v)) kids.push_back(map[c]);
    switch (label.kind) {
      case NodeLabel::Kind::input:
        if (!kids.empty()) throw StructureError("input " + label.to_string() + " has children");
        map[v] = input(label.index);
        break;
      case NodeLabel::Kind::output:
        map[v] = output(label.index, kids);
        break;
      case NodeLabel::Kind::internal:
        map[v] = node(kids);
        break;
    }
  }
  return map;
}

Dag unite(const Dag& a, const Dag& b) {
  const Dag parts[] = {a, b};
  return unite(parts);
}

Dag unite(std::span<const Dag> parts) {
  int n = 0;
  int m = 0;
  std::vector<int> outputs;
  for (const auto& part : parts) {
    n = std::max(n, part.input_size());
    m = std::max(m, part.max_fan_in());
    for (NodeId v = 0; v < part.node_count(); ++v) {
      if (part.label(v).is_output()) outputs.push_back(part.label(v).index);
    }
  }
  std::sort(outputs.begin(), outputs.end());
  if (const auto it = std::adjacent_find(outputs.begin(), outputs.end()); it != outputs.end()) {
    throw StructureError("union operands share output y" + std::to_string(*it));
  }
  DagBuilder builder(n, m);
  for (const auto& part : parts) builder.absorb(part);
  return std::move(builder).release();
}

Dag hash_cons(const Dag& g) {
  const auto order = g.topological_order();
  if (!order) throw StructureError("cannot hash-cons a cyclic graph");
  // Keep only nodes from which some output is reachable.
  std::vector<char> live(g.node_count(), 0);
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    const auto v = *it;
    if (g.label(v).is_output()) {
      live[v] = 1;
      continue;
    }
    for (const auto p : g.parents(v)) {
      if (live[p]) {
        live[v] = 1;
        break;
      }
    }
  }
  DagBuilder builder(g.input_size(), g.max_fan_in());
  std::vector<NodeId> map(g.node_count());
  std::vector<NodeId> kids;
  for (const auto v : *order) {
    if (!live[v]) continue;
    kids.clear();
    for (const auto c : g.children(v)) kids.push_back(map[c]);
    const auto& label = g.label(v);
    if (label.is_input()) {
      map[v] = builder.input(label.index);
    } else if (label.is_output()) {
      map[v] = builder.output(label.index, kids);
    } else {
      map[v] = builder.node(kids);
    }
  }
  return std::move(builder).release();
}

// ---------------------------------------------------------------------
// Validation

std::string to_string(Check check) {
  switch (check) {
    case Check::labels:
      return "labels";
    case Check::acyclic:
      return "acyclic";
    case Check::sources:
      return "sources";
    case Check::sinks:
      return "sinks";
    case Check::output_trees:
      return "output_trees";
    case Check::distinct_subtrees:
      return "distinct_subtrees";
    case Check::fan_in:
      return "fan_in";
  }
  return "unknown";
}

bool ValidationReport::passed(Check check) const {
  if (std::find(skipped.begin(), skipped.end(), check) != skipped.end()) return false;
  return std::none_of(violations.begin(), violations.end(),
                      [&](const Violation& v) { return v.check == check; });
}

std::vector<Violation> ValidationReport::failures(Check check) const {
  std::vector<Violation> out;
  for (const auto& v : violations) {
    if (v.check == check) out.push_back(v);
  }
  return out;
}

std::string ValidationReport::to_json(const Dag& g) const {
  nlohmann::ordered_json doc;
  doc["valid"] = ok();
  auto checks = nlohmann::ordered_json::array();
  for (const auto check : kAllChecks) {
    nlohmann::ordered_json entry;
    entry["name"] = to_string(check);
    const bool was_skipped = std::find(skipped.begin(), skipped.end(), check) != skipped.end();
    entry["pass"] = passed(check);
    if (was_skipped) entry["skipped"] = true;
    auto list = nlohmann::ordered_json::array();
    for (const auto& v : failures(check)) {
      nlohmann::ordered_json item;
      item["message"] = v.message;
      auto wit = nlohmann::ordered_json::array();
      for (const auto w : v.witnesses) {
        nlohmann::ordered_json node;
        node["id"] = w;
        if (w < g.node_count() && !g.label(w).is_internal()) {
          node["label"] = g.label(w).to_string();
        } else {
          node["label"] = nullptr;
        }
        wit.push_back(std::move(node));
      }
      item["witnesses"] = std::move(wit);
      list.push_back(std::move(item));
    }
    entry["violations"] = std::move(list);
    checks.push_back(std::move(entry));
  }
  doc["checks"] = std::move(checks);
  return doc.dump(2);
}

namespace {

std::vector<NodeId> find_cycle(const Dag& g) {
  enum : char { kWhite, kGrey, kBlack };
  std::vector<char> color(g.node_count(), kWhite);
  std::vector<NodeId> stack;
  std::vector<NodeId> cycle;
  std::function<bool(NodeId)> dfs = [&](NodeId v) {
    color[v] = kGrey;
    stack.push_back(v);
    for (const auto p : g.parents(v)) {
      if (color[p] == kGrey) {
        const auto it = std::find(stack.begin(), stack.end(), p);
        cycle.assign(it, stack.end());
        return true;
      }
      if (color[p] == kWhite && dfs(p)) return true;
    }
    stack.pop_back();
    color[v] = kBlack;
    return false;
  };
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (color[v] == kWhite && dfs(v)) break;
  }
  return cycle;
}

void check_labels(const Dag& g, ValidationReport& report) {
  const int n = g.input_size();
  std::map<NodeLabel, NodeId> seen;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto& label = g.label(v);
    if (label.is_internal()) continue;
    if (label.index < 1 || label.index > n) {
      report.violations.push_back({Check::labels, {v},
                                   "label " + label.to_string() + " outside [1, " +
                                       std::to_string(n) + "]"});
    }
    const auto [it, fresh] = seen.emplace(label, v);
    if (!fresh) {
      report.violations.push_back(
          {Check::labels, {it->second, v}, "duplicate label " + label.to_string()});
    }
  }
}

void check_terminals(const Dag& g, ValidationReport& report, bool sources) {
  const auto check = sources ? Check::sources : Check::sinks;
  const auto kind = sources ? NodeLabel::Kind::input : NodeLabel::Kind::output;
  const char* role = sources ? "source" : "sink";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto degree = sources ? g.children(v).size() : g.parents(v).size();
    const bool terminal_label = g.label(v).kind == kind;
    if (degree == 0 && !terminal_label) {
      report.violations.push_back(
          {check, {v}, std::string(role) + " " + describe(g, v) + " is not " +
                           (sources ? "an input" : "an output")});
    } else if (degree != 0 && terminal_label) {
      report.violations.push_back(
          {check, {v}, describe(g, v) + " must be a " + role + " but has " +
                           std::to_string(degree) + (sources ? " incoming" : " outgoing") +
                           " edge(s)"});
    }
  }
  for (int j = 1; j <= g.input_size(); ++j) {
    const auto found = sources ? g.find_input(j) : g.find_output(j);
    if (!found) {
      report.violations.push_back(
          {check, {}, std::string("missing ") + (sources ? "x" : "y") + std::to_string(j)});
    }
  }
}

void check_output_trees(const Dag& g, ValidationReport& report) {
  const int n = g.input_size();
  std::vector<char> in_set(g.node_count(), 0);
  for (NodeId root = 0; root < g.node_count(); ++root) {
    const auto& label = g.label(root);
    if (!label.is_output()) continue;
    const int j = label.index;
    std::fill(in_set.begin(), in_set.end(), 0);
    std::vector<NodeId> members{root};
    in_set[root] = 1;
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (const auto c : g.children(members[k])) {
        if (!in_set[c]) {
          in_set[c] = 1;
          members.push_back(c);
        }
      }
    }
    std::vector<char> has_leaf(static_cast<std::size_t>(std::max(n, 0)) + 1, 0);
    for (const auto v : members) {
      if (v != root) {
        std::size_t inside = 0;
        for (const auto p : g.parents(v)) inside += in_set[p] ? 1 : 0;
        if (inside > 1) {
          report.violations.push_back({Check::output_trees, {root, v},
                                       "subgraph of " + describe(g, root) + " is not a tree: " +
                                           describe(g, v) + " has " + std::to_string(inside) +
                                           " parents inside it"});
        }
      }
      if (!g.children(v).empty()) continue;
      const auto& leaf = g.label(v);
      if (!leaf.is_input()) {
        report.violations.push_back({Check::output_trees, {root, v},
                                     "leaf " + describe(g, v) + " of " + describe(g, root) +
                                         " is not an input"});
      } else if (leaf.index == j) {
        report.violations.push_back(
            {Check::output_trees, {root, v}, leaf.to_string() + " must not feed " + label.to_string()});
      } else if (leaf.index >= 1 && leaf.index <= n) {
        has_leaf[static_cast<std::size_t>(leaf.index)] = 1;
      }
    }
    for (int i = 1; i <= n; ++i) {
      if (i == j || has_leaf[static_cast<std::size_t>(i)]) continue;
      std::vector<NodeId> wit{root};
      if (const auto xi = g.find_input(i)) wit.push_back(*xi);
      report.violations.push_back({Check::output_trees, wit,
                                   label.to_string() + " does not depend on x" + std::to_string(i)});
    }
  }
}

void check_distinct(const Dag& g, ValidationReport& report) {
  KeyInterner interner;
  const auto keys = canonical_keys(g, interner);
  std::unordered_map<KeyId, NodeId> first;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto [it, fresh] = first.emplace(keys[v], v);
    if (!fresh) {
      report.violations.push_back({Check::distinct_subtrees, {it->second, v},
                                   describe(g, it->second) + " and " + describe(g, v) +
                                       " compute identical subtrees"});
    }
  }
}

void check_fan_in(const Dag& g, ValidationReport& report) {
  const int m = g.max_fan_in();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto& label = g.label(v);
    if (label.is_input()) continue;
    const int d = g.fan_in(v);
    if (d == 1 && label.is_output() && g.input_size() == 2) continue;
    if (d < 2 || d > m) {
      report.violations.push_back({Check::fan_in, {v},
                                   describe(g, v) + " has fan-in " + std::to_string(d) +
                                       ", expected [2, " + std::to_string(m) + "]"});
    }
  }
}

}  // namespace

ValidationReport validate(const Dag& g) {
  ValidationReport report;
  check_labels(g, report);
  const bool acyclic = g.topological_order().has_value();
  if (!acyclic) {
    report.violations.push_back({Check::acyclic, find_cycle(g), "directed cycle"});
  }
  check_terminals(g, report, true);
  check_terminals(g, report, false);
  if (acyclic) {
    check_output_trees(g, report);
    check_distinct(g, report);
  } else {
    report.skipped = {Check::output_trees, Check::distinct_subtrees};
  }
  check_fan_in(g, report);
  return report;
}

// ---------------------------------------------------------------------
// Evaluation

namespace {

void require_fan_in(const Dag& g, const CostModel& costs) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.fan_in(v) > costs.max_fan_in()) {
      throw StructureError(describe(g, v) + " has fan-in " + std::to_string(g.fan_in(v)) +
                           " above the cost model's m = " + std::to_string(costs.max_fan_in()));
    }
  }
}

}  // namespace

Rational complexity(const Dag& g, const CostModel& costs) {
  require_fan_in(g, costs);
  Rational total(0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    total += costs.complexity_factor(g.fan_in(v));
  }
  return total;
}

Rational latency(const Dag& g, const CostModel& costs) {
  require_fan_in(g, costs);
  const auto order = g.topological_order();
  if (!order) throw StructureError("latency of a cyclic graph is unbounded");
  std::vector<Rational> arrival(g.node_count(), Rational(0));
  Rational worst(0);
  for (const auto v : *order) {
    Rational longest(0);
    for (const auto c : g.children(v)) longest = std::max(longest, arrival[c]);
    arrival[v] = longest + costs.latency_factor(g.fan_in(v));
    worst = std::max(worst, arrival[v]);
  }
  return worst;
}

// ---------------------------------------------------------------------
// Pruning

PruneResult prune(const Dag& g, int n) {
  const int original = g.input_size();
  if (n < 2) throw std::invalid_argument("prune target must be at least 2");
  if (n > original) {
    throw std::invalid_argument("prune target " + std::to_string(n) + " exceeds input size " +
                                std::to_string(original));
  }
  if (n == original) return {g, {}};

  const auto order = g.topological_order();
  if (!order) throw StructureError("cannot prune a cyclic graph");

  PruneResult result;
  DagBuilder builder(n, g.max_fan_in());
  std::vector<std::optional<NodeId>> image(g.node_count());
  std::vector<NodeId> kids;
  for (const auto v : *order) {
    const auto& label = g.label(v);
    if (label.is_input()) {
      if (label.index <= n) image[v] = builder.input(label.index);
      continue;
    }
    if (label.is_output() && label.index > n) continue;
    kids.clear();
    for (const auto c : g.children(v)) {
      if (image[c]) kids.push_back(*image[c]);
    }
    std::sort(kids.begin(), kids.end());
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
    if (label.is_output()) {
      if (kids.empty()) {
        throw StructureError(label.to_string() + " loses every input when pruned");
      }
      if (kids.size() == 1 && !builder.dag().label(kids.front()).is_input()) {
        const auto only = kids.front();
        const auto grand = builder.dag().children(only);
        kids.assign(grand.begin(), grand.end());
        result.log.push_back(label.to_string() + " absorbed its single remaining child");
      }
      image[v] = builder.output(label.index, kids);
      continue;
    }
    if (kids.empty()) continue;
    if (kids.size() == 1) {
      image[v] = kids.front();
      result.log.push_back("spliced out " + describe(g, v) + " (fan-in fell to 1)");
      continue;
    }
    const auto before = builder.merges();
    image[v] = builder.node(kids);
    if (builder.merges() != before) {
      result.log.push_back("merged " + describe(g, v) + " into an identical subtree");
    }
  }
  result.structure = hash_cons(builder.dag());
  result.structure.set_input_size(n);
  return result;
}

}  // namespace mpstruct
