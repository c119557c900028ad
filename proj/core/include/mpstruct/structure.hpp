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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mpstruct/cost_model.hpp"
#include "mpstruct/rational.hpp"

namespace mpstruct {

using NodeId = std::uint32_t;

/// Inputs x_j and outputs y_j carry a 1-based index; computation nodes
/// are unlabelled.
struct NodeLabel {
  enum class Kind : std::uint8_t { internal, input, output };

  Kind kind = Kind::internal;
  int index = 0;

  static constexpr NodeLabel internal() { return {}; }
  static constexpr NodeLabel input(int j) { return {Kind::input, j}; }
  static constexpr NodeLabel output(int j) { return {Kind::output, j}; }

  bool is_input() const noexcept { return kind == Kind::input; }
  bool is_output() const noexcept { return kind == Kind::output; }
  bool is_internal() const noexcept { return kind == Kind::internal; }

  /// "x3", "y5", or "" for an unlabelled node.
  std::string to_string() const;

  friend auto operator<=>(const NodeLabel&, const NodeLabel&) = default;
};

/// A directed acyclic graph of computation nodes. Edges run from child to
/// parent, i.e. in the direction messages flow towards the outputs.
///
/// This is the raw representation shared by structures and
/// substructures; it does not enforce any structure property by itself
/// (see `validate`). Graphs produced by `DagBuilder` are hash-consed.
class Dag {
 public:
  Dag() = default;
  /// `input_size` is n, `max_fan_in` is m.
  Dag(int input_size, int max_fan_in) : input_size_(input_size), max_fan_in_(max_fan_in) {}

  int input_size() const noexcept { return input_size_; }
  int max_fan_in() const noexcept { return max_fan_in_; }
  void set_input_size(int n) noexcept { input_size_ = n; }
  void set_max_fan_in(int m) noexcept { max_fan_in_ = m; }

  NodeId add_node(NodeLabel label);
  /// Adds child -> parent. Throws StructureError on a repeated edge, a
  /// self-loop or an unknown node.
  void add_edge(NodeId child, NodeId parent);
  /// Throws StructureError if the edge is absent.
  void remove_edge(NodeId child, NodeId parent);
  void set_label(NodeId v, NodeLabel label);

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept;
  const NodeLabel& label(NodeId v) const { return labels_.at(v); }
  std::span<const NodeId> children(NodeId v) const { return children_.at(v); }
  std::span<const NodeId> parents(NodeId v) const { return parents_.at(v); }
  int fan_in(NodeId v) const { return static_cast<int>(children_.at(v).size()); }
  bool has_edge(NodeId child, NodeId parent) const;

  /// All (child, parent) pairs, grouped by parent in node order.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  std::optional<NodeId> find_input(int j) const;
  std::optional<NodeId> find_output(int j) const;

  /// Kahn order (children before parents); nullopt when the graph has a
  /// cycle.
  std::optional<std::vector<NodeId>> topological_order() const;

 private:
  int input_size_ = 0;
  int max_fan_in_ = 0;
  std::vector<NodeLabel> labels_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::vector<NodeId>> parents_;
};

/// Number of nodes of every fan-in 0..max; index i holds d_i.
std::vector<std::size_t> fan_in_histogram(const Dag& g);

// ---------------------------------------------------------------------
// Canonical subtree identity
// ---------------------------------------------------------------------

using KeyId = std::uint32_t;

/// Interning table for subtree identity. A node's key is determined by its
/// label and the multiset of its children's keys, so two nodes receive the
/// same key iff their ancestor subtrees are identical as partially
/// unlabelled rooted trees. Child order never matters.
///
/// Share one interner between graphs to compare subtrees across them.
class KeyInterner {
 public:
  KeyId intern(NodeLabel label, std::vector<KeyId> child_keys);
  std::size_t size() const noexcept { return entries_.size(); }
  NodeLabel label(KeyId key) const { return entries_.at(key).label; }
  std::span<const KeyId> children(KeyId key) const { return entries_.at(key).children; }

 private:
  struct Entry {
    NodeLabel label;
    std::vector<KeyId> children;  // sorted
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  struct EntryHash {
    std::size_t operator()(const Entry& e) const noexcept;
  };
  std::vector<Entry> entries_;
  std::unordered_map<Entry, KeyId, EntryHash> index_;
};

/// Keys for every node of an acyclic graph. Throws StructureError on a
/// cycle.
std::vector<KeyId> canonical_keys(const Dag& g, KeyInterner& interner);

/// Key of a single node's subtree.
KeyId canonical_key(const Dag& g, NodeId root, KeyInterner& interner);

/// Human-readable canonical spelling of a subtree, e.g. "y1(x2,(x3,x4))".
/// Children are sorted, so equal strings mean identical subtrees.
std::string canonical_form(const Dag& g, NodeId root);

// ---------------------------------------------------------------------
// Hash-consing construction and union
// ---------------------------------------------------------------------

/// Builds a Dag in which no two nodes have identical subtrees. Requesting
/// a node that already exists returns the existing id.
class DagBuilder {
 public:
  DagBuilder(int input_size, int max_fan_in) : dag_(input_size, max_fan_in) {}

  NodeId input(int j);
  /// Unlabelled computation node over `children` (fan-in >= 2).
  NodeId node(std::vector<NodeId> children);
  /// Output y_j over `children`.
  NodeId output(int j, std::vector<NodeId> children);

  /// Copies every node of `other` into this builder, merging identical
  /// subtrees; returns the id map from `other` to this builder.
  std::vector<NodeId> absorb(const Dag& other);

  /// Number of requests answered with an already existing node.
  std::size_t merges() const noexcept { return merges_; }
  const Dag& dag() const noexcept { return dag_; }
  Dag release() && { return std::move(dag_); }

 private:
  NodeId intern(NodeLabel label, std::vector<NodeId> children);

  struct Key {
    NodeLabel label;
    std::vector<NodeId> children;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  Dag dag_;
  std::unordered_map<Key, NodeId, KeyHash> index_;
  std::size_t merges_ = 0;
};

/// Substructure union: keeps a single copy of every shared subtree. The
/// operands must not both contain the same output label.
Dag unite(const Dag& a, const Dag& b);
Dag unite(std::span<const Dag> parts);

/// Re-builds `g` through a DagBuilder, merging duplicate subtrees and
/// dropping nodes that reach no output.
Dag hash_cons(const Dag& g);

// ---------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------

/// The checked properties. `sources` .. `fan_in` are the five defining
/// properties of a structure; `labels` and `acyclic` are preconditions.
enum class Check {
  labels,             // input/output indices in [1, n] and unique
  acyclic,            // no directed cycle
  sources,            // the sources are exactly x_1..x_n
  sinks,              // the sinks are exactly y_1..y_n
  output_trees,       // ancestors of y_j form a tree over X \ {x_j}
  distinct_subtrees,  // no two nodes have identical subtrees
  fan_in,             // every non-input node has fan-in in [2, m]
};

inline constexpr Check kAllChecks[] = {Check::labels,       Check::acyclic,
                                       Check::sources,      Check::sinks,
                                       Check::output_trees, Check::distinct_subtrees,
                                       Check::fan_in};

std::string to_string(Check check);

struct Violation {
  Check check;
  std::vector<NodeId> witnesses;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  /// Checks that could not run because a precondition failed (a cyclic
  /// graph has no well-defined subtrees).
  std::vector<Check> skipped;

  bool ok() const noexcept { return violations.empty() && skipped.empty(); }
  bool passed(Check check) const;
  std::vector<Violation> failures(Check check) const;
  /// {"valid": bool, "checks": [{"name", "pass", "violations": [...]}]}
  std::string to_json(const Dag& g) const;
};

/// Checks every structure property and reports all failures. A graph with
/// n = 2 may wire each output straight to its single input (fan-in 1).
ValidationReport validate(const Dag& g);

// ---------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------

/// Sum of c_{fan-in} over all nodes. Throws StructureError if some fan-in
/// exceeds the model's m.
Rational complexity(const Dag& g, const CostModel& costs);

/// Largest sum of l_{fan-in} along any directed path (node-weighted
/// longest path). Throws StructureError on a cycle or a fan-in above m.
Rational latency(const Dag& g, const CostModel& costs);

// ---------------------------------------------------------------------
// Pruning
// ---------------------------------------------------------------------

struct PruneResult {
  Dag structure;
  /// One line per splice or merge applied.
  std::vector<std::string> log;
};

/// Shrinks a valid structure with n' inputs to `n` inputs: removes
/// x_{n+1..n'} and y_{n+1..n'}, splices out computation nodes left with a
/// single child, drops nodes left without children, and re-runs
/// hash-consing. Latency and complexity never increase.
/// Throws std::invalid_argument if n < 2 or n > n'.
PruneResult prune(const Dag& g, int n);

}  // namespace mpstruct
