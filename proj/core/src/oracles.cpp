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

#include "mpstruct/oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "mpstruct/errors.hpp"
#include "mpstruct/rational.hpp"
#include "mpstruct/star_optimizer.hpp"
#include "mpstruct/structure.hpp"

namespace mpstruct {

void EnumerationBudget::check() const {
  if (max_star_leaves <= 0) throw ConfigError("max_star_leaves", "must be positive");
  if (max_drt_leaves <= 0) throw ConfigError("max_drt_leaves", "must be positive");
  if (max_labeling_inputs <= 0) throw ConfigError("max_labeling_inputs", "must be positive");
  if (max_count == 0) throw ConfigError("max_count", "must be positive");
  if (time_limit.count() <= 0) throw ConfigError("time_limit", "must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

class Guard {
 public:
  explicit Guard(const EnumerationBudget& budget) : budget_(budget), start_(Clock::now()) {}

  void count(std::size_t produced) const {
    if (produced > budget_.max_count) {
      throw BudgetExceeded("enumeration produced more than " + std::to_string(budget_.max_count) +
                           " objects");
    }
    if (Clock::now() - start_ > budget_.time_limit) {
      throw BudgetExceeded("enumeration exceeded its time limit");
    }
  }

 private:
  const EnumerationBudget& budget_;
  Clock::time_point start_;
};

// A small rooted tree with root 0, used by the growth enumerators.
struct RTree {
  std::vector<std::vector<int>> kids{{}};

  int add(int parent) {
    kids.emplace_back();
    const int id = static_cast<int>(kids.size()) - 1;
    kids[static_cast<std::size_t>(parent)].push_back(id);
    return id;
  }

  std::string form(int v = 0) const {
    const auto& ch = kids[static_cast<std::size_t>(v)];
    if (ch.empty()) return "L";
    std::vector<std::string> parts;
    for (const int c : ch) parts.push_back(form(c));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto& p : parts) out += p;
    return out + ")";
  }

  int copy_into(TreeShape& pool, int v = 0) const {
    const auto& ch = kids[static_cast<std::size_t>(v)];
    if (ch.empty()) return pool.add_leaf();
    std::vector<int> out;
    for (const int c : ch) out.push_back(copy_into(pool, c));
    return pool.add_node(std::move(out));
  }
};

int copy_shape(const TreeShape& from, int v, TreeShape& to) {
  if (from.is_leaf(v)) return to.add_leaf();
  std::vector<int> out;
  for (const int c : from.children(v)) out.push_back(copy_shape(from, c, to));
  return to.add_node(std::move(out));
}

DegreeVector minus(DegreeVector a, const DegreeVector& b) {
  for (std::size_t k = 0; k < a.counts.size(); ++k) a.counts[k] -= b.counts[k];
  return a;
}

// Calls f(v) for every v <= u.
template <typename F>
void for_each_below(const DegreeVector& u, F&& f) {
  DegreeVector v = DegreeVector::zero(u.max_fan_in());
  while (true) {
    f(static_cast<const DegreeVector&>(v));
    std::size_t k = 0;
    while (k < v.counts.size() && v.counts[k] == u.counts[k]) {
      v.counts[k] = 0;
      ++k;
    }
    if (k == v.counts.size()) return;
    ++v.counts[k];
  }
}

// Rooted trees catalogued by rooted degree vector. Children are multisets
// of catalogue ids taken in non-decreasing order, so no shape repeats.
class DegreeCatalogue {
 public:
  DegreeCatalogue(int max_fan_in, const Guard& guard) : max_fan_in_(max_fan_in), guard_(guard) {}

  const std::vector<int>& trees(const DegreeVector& v) {
    if (auto it = memo_.find(v); it != memo_.end()) return it->second;
    std::vector<int> ids;
    if (v.is_zero()) {
      ids.push_back(pool_.add_leaf());
    } else {
      for (int i = 1; i <= max_fan_in_ - 1; ++i) {
        if (v[i] == 0) continue;
        DegreeVector rest = v;
        --rest[i];
        for (const auto& kids : forests(rest, i + 1, -1)) ids.push_back(pool_.add_node(kids));
      }
    }
    guard_.count(pool_.size());
    return memo_[v] = std::move(ids);
  }

  /// Multisets of `k` catalogue trees (ids >= min_id, non-decreasing)
  /// whose degree vectors add up to v.
  std::vector<std::vector<int>> forests(const DegreeVector& v, int k, int min_id) {
    std::vector<std::vector<int>> out;
    if (k == 0) {
      if (v.is_zero()) out.emplace_back();
      return out;
    }
    for_each_below(v, [&](const DegreeVector& a) {
      const std::vector<int> heads = trees(a);  // copy: the memo may rehash
      for (const int id : heads) {
        if (id < min_id) continue;
        for (auto& tail : forests(minus(v, a), k - 1, id)) {
          tail.insert(tail.begin(), id);
          out.push_back(std::move(tail));
        }
      }
    });
    guard_.count(out.size());
    return out;
  }

  const TreeShape& pool() const noexcept { return pool_; }

 private:
  int max_fan_in_;
  const Guard& guard_;
  TreeShape pool_;
  std::map<DegreeVector, std::vector<int>> memo_;
};

std::vector<StarTree> sorted_unique(std::vector<StarTree> trees) {
  std::map<std::string, StarTree> unique;
  for (auto& t : trees) unique.emplace(unlabeled_canonical_form(t), std::move(t));
  std::vector<StarTree> out;
  for (auto& [form, t] : unique) {
    t.label_leaves_depth_first();
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<StarTree> star_trees_by_growth(const DegreeVector& q, const Guard& guard) {
  const int m = q.max_fan_in();
  struct State {
    StarTree tree;
    DegreeVector left;
  };
  std::map<std::string, State> layer;
  for (int i = 1; i <= m - 1; ++i) {
    if (q[i] == 0) continue;
    StarTree t(m);
    const int centre = t.add_node();
    for (int k = 0; k < i + 2; ++k) t.add_edge(centre, t.add_node());
    DegreeVector left = q;
    --left[i];
    auto form = unlabeled_canonical_form(t);
    layer.emplace(std::move(form), State{std::move(t), std::move(left)});
  }
  for (int step = 1; step < q.internal_nodes(); ++step) {
    std::map<std::string, State> next;
    for (const auto& [form, state] : layer) {
      for (int i = 1; i <= m - 1; ++i) {
        if (state.left[i] == 0) continue;
        for (int v = 0; v < state.tree.node_count(); ++v) {
          if (!state.tree.is_leaf(v)) continue;
          StarTree t = state.tree;
          for (int k = 0; k < i + 1; ++k) t.add_edge(v, t.add_node());
          DegreeVector left = state.left;
          --left[i];
          auto form = unlabeled_canonical_form(t);  // before t is moved from
          next.emplace(std::move(form), State{std::move(t), std::move(left)});
        }
      }
      guard.count(next.size());
    }
    layer = std::move(next);
  }
  std::vector<StarTree> out;
  for (auto& [form, state] : layer) out.push_back(std::move(state.tree));
  return sorted_unique(std::move(out));
}

std::vector<StarTree> star_trees_by_partition(const DegreeVector& q, const Guard& guard) {
  const int m = q.max_fan_in();
  DegreeCatalogue catalogue(m, guard);
  std::vector<StarTree> out;
  for (int i = 1; i <= m - 1; ++i) {
    if (q[i] == 0) continue;
    DegreeVector rest = q;
    --rest[i];
    for (const auto& branches : catalogue.forests(rest, i + 2, -1)) {
      StarTree t(m);
      const int centre = t.add_node();
      const TreeShape& pool = catalogue.pool();
      auto copy = [&](auto&& self, int v) -> int {
        const int id = t.add_node();
        for (const int c : pool.children(v)) t.add_edge(id, self(self, c));
        return id;
      };
      for (const int b : branches) t.add_edge(centre, copy(copy, b));
      out.push_back(std::move(t));
      guard.count(out.size());
    }
  }
  return sorted_unique(std::move(out));
}

ShapeSet to_shape_set(std::map<std::string, RTree> unique) {
  ShapeSet out;
  for (const auto& [form, t] : unique) out.roots.push_back(t.copy_into(out.pool));
  return out;
}

ShapeSet drts_by_growth(int leaves, int m, const Guard& guard) {
  std::map<std::string, RTree> layer;
  layer.emplace("L", RTree{});
  for (int size = 1; size < leaves; ++size) {
    std::map<std::string, RTree> next;
    for (const auto& [form, t] : layer) {
      for (int v = 0; v < static_cast<int>(t.kids.size()); ++v) {
        const auto fan_in = static_cast<int>(t.kids[static_cast<std::size_t>(v)].size());
        RTree grown = t;
        if (fan_in == 0) {
          grown.add(v);
          grown.add(v);
        } else if (fan_in < m) {
          grown.add(v);
        } else {
          continue;
        }
        next.emplace(grown.form(), std::move(grown));
      }
      guard.count(next.size());
    }
    layer = std::move(next);
  }
  return to_shape_set(std::move(layer));
}

ShapeSet drts_by_partition(int leaves, int m, const Guard& guard) {
  TreeShape pool;
  std::vector<int> leaf_counts;
  std::map<int, std::vector<int>> by_size;

  // Multisets of k catalogue ids (non-decreasing) with `total` leaves.
  auto forests = [&](auto&& self, int total, int k, int min_id) -> std::vector<std::vector<int>> {
    std::vector<std::vector<int>> out;
    if (k == 0) {
      if (total == 0) out.emplace_back();
      return out;
    }
    for (int first = 1; first <= total - (k - 1); ++first) {
      for (const int id : by_size[first]) {
        if (id < min_id) continue;
        for (auto& tail : self(self, total - first, k - 1, id)) {
          tail.insert(tail.begin(), id);
          out.push_back(std::move(tail));
        }
      }
    }
    guard.count(out.size());
    return out;
  };

  for (int size = 1; size <= leaves; ++size) {
    std::vector<int> ids;
    if (size == 1) {
      ids.push_back(pool.add_leaf());
    } else {
      for (int k = 2; k <= std::min(m, size); ++k) {
        for (auto& kids : forests(forests, size, k, -1)) ids.push_back(pool.add_node(std::move(kids)));
      }
    }
    by_size[size] = std::move(ids);
    guard.count(pool.size());
  }

  std::map<std::string, int> sorted;
  for (const int id : by_size[leaves]) sorted.emplace(pool.canonical_form(id), id);
  ShapeSet out;
  for (const auto& [form, id] : sorted) out.roots.push_back(copy_shape(pool, id, out.pool));
  return out;
}

std::string labeled_form(const TreeShape& pool, int v, const std::vector<int>& label_of) {
  if (pool.is_leaf(v)) return std::to_string(label_of[static_cast<std::size_t>(v)]);
  std::vector<std::string> parts;
  for (const int c : pool.children(v)) parts.push_back(labeled_form(pool, c, label_of));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += ',';
    out += parts[k];
  }
  return out + ")";
}

}  // namespace

std::vector<DegreeVector> enumerate_degree_vectors(int n, int max_fan_in, const EnumerationBudget& budget) {
  if (n < 2) throw std::invalid_argument("input size must be at least 2");
  Guard guard(budget);
  std::vector<DegreeVector> out;
  DegreeVector q = DegreeVector::zero(max_fan_in);
  auto fill = [&](auto&& self, int i, int remaining) -> void {
    if (i == 0) {
      if (remaining == 0) out.push_back(q);
      guard.count(out.size());
      return;
    }
    for (int c = 0; c * i <= remaining; ++c) {
      q[i] = c;
      self(self, i - 1, remaining - c * i);
    }
    q[i] = 0;
  };
  fill(fill, max_fan_in - 1, n - 2);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TypeVector> enumerate_type_vectors(int leaves, int max_fan_in) {
  std::vector<TypeVector> out;
  TypeVector w = TypeVector::zero(max_fan_in);
  auto fill = [&](auto&& self, int i, std::int64_t remaining) -> void {
    if (i == 0) {
      if (remaining == 1) out.push_back(w);
      return;
    }
    std::int64_t left = remaining;
    for (int c = 0;; ++c) {
      w[i] = c;
      self(self, i - 1, left);
      if (left % (i + 1) != 0) break;
      left /= i + 1;
    }
    w[i] = 0;
  };
  if (leaves >= 1) fill(fill, max_fan_in - 1, leaves);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<StarTree> enumerate_star_trees(const DegreeVector& q, Strategy strategy,
                                           const EnumerationBudget& budget) {
  budget.check();
  for (const int c : q.counts) {
    if (c < 0) throw InfeasibleError("degree vector " + q.to_string() + " has a negative entry");
  }
  if (q.is_zero()) throw InfeasibleError("the zero degree vector has no internal node");
  if (q.implied_input_size() > budget.max_star_leaves) {
    throw BudgetExceeded("star trees with " + std::to_string(q.implied_input_size()) +
                         " leaves exceed the budget of " + std::to_string(budget.max_star_leaves));
  }
  Guard guard(budget);
  return strategy == Strategy::growth ? star_trees_by_growth(q, guard) : star_trees_by_partition(q, guard);
}

ShapeSet enumerate_drts(int leaves, int max_fan_in, Strategy strategy, const EnumerationBudget& budget) {
  budget.check();
  if (leaves < 1) throw std::invalid_argument("a DRT has at least one leaf");
  if (leaves > budget.max_drt_leaves) {
    throw BudgetExceeded("DRTs with " + std::to_string(leaves) + " leaves exceed the budget of " +
                         std::to_string(budget.max_drt_leaves));
  }
  Guard guard(budget);
  return strategy == Strategy::growth ? drts_by_growth(leaves, max_fan_in, guard)
                                      : drts_by_partition(leaves, max_fan_in, guard);
}

ShapeSet enumerate_drts_with_degrees(const DegreeVector& u, const EnumerationBudget& budget) {
  budget.check();
  if (u.implied_input_size() - 1 > budget.max_drt_leaves + budget.max_star_leaves) {
    throw BudgetExceeded("degree vector " + u.to_string() + " is too large to enumerate");
  }
  Guard guard(budget);
  DegreeCatalogue catalogue(u.max_fan_in(), guard);
  std::map<std::string, int> sorted;
  for (const int id : catalogue.trees(u)) sorted.emplace(catalogue.pool().canonical_form(id), id);
  ShapeSet out;
  for (const auto& [form, id] : sorted) out.roots.push_back(copy_shape(catalogue.pool(), id, out.pool));
  return out;
}

Rational oracle_phi(const StarTree& t, const CostModel& costs) {
  Rational best(0);
  auto weight = [&](int v) { return t.is_leaf(v) ? Rational(0) : costs.latency_factor(t.degree(v) - 1); };
  for (int s = 0; s < t.node_count(); ++s) {
    if (!t.is_leaf(s)) continue;
    // Walk every simple path out of s.
    std::vector<std::tuple<int, int, Rational>> stack{{s, -1, Rational(0)}};
    while (!stack.empty()) {
      auto [v, from, sum] = stack.back();
      stack.pop_back();
      sum += weight(v);
      if (t.is_leaf(v) && v != s) best = std::max(best, sum);
      for (const int u : t.neighbors(v)) {
        if (u != from) stack.emplace_back(u, v, sum);
      }
    }
  }
  return best;
}

Rational oracle_tau(const DegreeVector& u, int trees, const CostModel& costs, const EnumerationBudget& budget) {
  if (trees < 1) throw std::invalid_argument("at least one tree");
  std::map<DegreeVector, Rational> single;
  for_each_below(u, [&](const DegreeVector& v) {
    const ShapeSet set = enumerate_drts_with_degrees(v, budget);
    std::optional<Rational> best;
    for (const int root : set.roots) {
      const Rational l = set.pool.latency(root, costs);
      if (!best || l < *best) best = l;
    }
    single[v] = *best;
  });
  // Distribute u over the trees in every possible way.
  auto forest = [&](auto&& self, const DegreeVector& v, int k) -> Rational {
    if (k == 1) return single.at(v);
    std::optional<Rational> best;
    for_each_below(v, [&](const DegreeVector& a) {
      const Rational worst = std::max(single.at(a), self(self, minus(v, a), k - 1));
      if (!best || worst < *best) best = worst;
    });
    return *best;
  };
  return forest(forest, u, trees);
}

LabelingSearch labeling_search(const IsoDrt& d, const CostModel& costs, const EnumerationBudget& budget) {
  budget.check();
  const int n = static_cast<int>(d.leaf_count()) + 1;
  if (n > budget.max_labeling_inputs) {
    throw BudgetExceeded("labelling search over " + std::to_string(n) + " inputs exceeds the budget of " +
                         std::to_string(budget.max_labeling_inputs));
  }
  Guard guard(budget);
  const int m = d.max_fan_in();
  TreeShape pool;
  const int root = d.build(pool);
  const std::vector<int> leaves = pool.leaves_in_order(root);

  // Distinct labelled copies per output.
  std::vector<std::vector<std::vector<int>>> options(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    std::vector<int> labels;
    for (int k = 1; k <= n; ++k) {
      if (k != j) labels.push_back(k);
    }
    std::map<std::string, std::vector<int>> distinct;
    std::vector<int> label_of(pool.size(), 0);
    do {
      for (std::size_t k = 0; k < leaves.size(); ++k) label_of[static_cast<std::size_t>(leaves[k])] = labels[k];
      distinct.emplace(labeled_form(pool, root, label_of), labels);
    } while (std::next_permutation(labels.begin(), labels.end()));
    for (auto& [form, l] : distinct) options[static_cast<std::size_t>(j - 1)].push_back(std::move(l));
  }

  LabelingSearch out;
  out.n = n;
  out.type_vector = type_vector_of(d);
  out.bound = iso_complexity(out.type_vector, n, costs);
  out.min_fan_in_counts.assign(static_cast<std::size_t>(m - 1), SIZE_MAX);
  const Rational consecutive = complexity(structure_from_iso_drt(d, consecutive_labeling(d, n)), costs);

  std::optional<Rational> best;
  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  while (true) {
    Labeling labeling;
    for (int j = 0; j < n; ++j) {
      labeling.push_back(options[static_cast<std::size_t>(j)][pick[static_cast<std::size_t>(j)]]);
    }
    const Dag g = structure_from_iso_drt(d, labeling);
    const Rational c = complexity(g, costs);
    const auto histogram = fan_in_histogram(g);
    for (int i = 1; i <= m - 1; ++i) {
      const std::size_t count = static_cast<std::size_t>(i + 1) < histogram.size() ? histogram[static_cast<std::size_t>(i + 1)] : 0;
      auto& low = out.min_fan_in_counts[static_cast<std::size_t>(i - 1)];
      low = std::min(low, count);
      if (count < static_cast<std::size_t>(n) * static_cast<std::size_t>(out.type_vector[i])) out.below_bound = true;
    }
    ++out.structures;
    if (!best || c < *best) {
      best = c;
      out.achievers = 1;
    } else if (c == *best) {
      ++out.achievers;
    }
    guard.count(out.structures);

    int j = 0;
    while (j < n && ++pick[static_cast<std::size_t>(j)] == options[static_cast<std::size_t>(j)].size()) {
      pick[static_cast<std::size_t>(j)] = 0;
      ++j;
    }
    if (j == n) break;
  }
  out.best = *best;
  out.consecutive_achieves = consecutive == out.best;
  return out;
}

// ---------------------------------------------------------------------
// Report

bool VerifyReport::all_passed() const noexcept { return failures() == 0; }

std::size_t VerifyReport::failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; }));
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["n"] = n;
  doc["all_pass"] = all_passed();
  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json item;
    item["name"] = c.name;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.params) params[k] = v;
    item["params"] = std::move(params);
    item["dp_value"] = c.dp_value;
    item["oracle_value"] = c.oracle_value;
    item["pass"] = c.pass;
    if (!c.skipped.empty()) item["skipped"] = c.skipped;
    if (!c.witness.empty()) item["witness"] = c.witness;
    doc["checks"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

namespace {

std::string join(const std::vector<DegreeVector>& qs) {
  std::string out = "{";
  for (std::size_t k = 0; k < qs.size(); ++k) {
    if (k) out += ',';
    out += qs[k].to_string();
  }
  return out + "}";
}

std::string join(const std::vector<TypeVector>& ws) {
  std::string out = "{";
  for (std::size_t k = 0; k < ws.size(); ++k) {
    if (k) out += ',';
    out += ws[k].to_string();
  }
  return out + "}";
}

CheckResult compare(std::string name, std::vector<std::pair<std::string, std::string>> params,
                    std::string dp, std::string oracle) {
  CheckResult r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.pass = dp == oracle;
  r.dp_value = std::move(dp);
  r.oracle_value = std::move(oracle);
  return r;
}

CheckResult skipped(std::string name, std::vector<std::pair<std::string, std::string>> params,
                    std::string reason) {
  CheckResult r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.skipped = std::move(reason);
  return r;
}

std::string structure_summary(const Dag& g, const CostModel& costs) {
  const auto report = validate(g);
  if (!report.ok()) {
    std::string out = "invalid:";
    for (const auto& v : report.violations) out += " " + to_string(v.check);
    return out;
  }
  return "valid C=" + to_string(complexity(g, costs)) + " L=" + to_string(latency(g, costs));
}

void star_checks(int n, const CostModel& costs, const EnumerationBudget& budget, VerifyReport& report) {
  const int m = costs.max_fan_in();
  const std::string ns = std::to_string(n);

  const ComplexityTable table = min_star_complexity(n, costs);
  const auto vectors = enumerate_degree_vectors(n, m, budget);
  std::optional<Rational> oracle_best;
  std::vector<DegreeVector> oracle_optimal;
  for (const auto& q : vectors) {
    const Rational c = q.is_zero() ? Rational(0) : star_complexity(q, costs);
    if (!oracle_best || c < *oracle_best) {
      oracle_best = c;
      oracle_optimal.assign(1, q);
    } else if (c == *oracle_best) {
      oracle_optimal.push_back(q);
    }
  }
  report.checks.push_back(compare("min_star_complexity", {{"n", ns}}, to_string(table.min_complexity(n)),
                                  to_string(*oracle_best)));
  const auto dp_optimal = optimal_degree_vectors(table, n, true);
  report.checks.push_back(compare("optimal_degree_vectors", {{"n", ns}}, join(dp_optimal), join(oracle_optimal)));
  if (n < 3) return;

  for (const auto& q : dp_optimal) {
    std::vector<std::pair<std::string, std::string>> params{{"q", q.to_string()}};
    if (q.implied_input_size() > budget.max_star_leaves) {
      report.checks.push_back(skipped("min_star_latency", params, "over the star-tree leaf budget"));
      continue;
    }
    const StarLatencyResult dp = min_star_latency(q, costs);
    std::optional<Rational> best;
    std::string best_form;
    try {
      for (const auto& t : enumerate_star_trees(q, Strategy::partition, budget)) {
        const Rational phi = oracle_phi(t, costs);
        if (!best || phi < *best) {
          best = phi;
          best_form = unlabeled_canonical_form(t);
        }
      }
    } catch (const BudgetExceeded& e) {
      report.checks.push_back(skipped("min_star_latency", params, e.what()));
      continue;
    }
    auto r = compare("min_star_latency", params, to_string(dp.value), to_string(*best));
    r.witness = best_form;
    report.checks.push_back(std::move(r));

    auto w = compare("star_latency_witness", params, to_string(dp.value), to_string(oracle_phi(dp.tree, costs)));
    if (degree_vector_of(dp.tree) != q) {
      w.pass = false;
      w.oracle_value += " (witness degree vector " + degree_vector_of(dp.tree).to_string() + ")";
    }
    w.witness = unlabeled_canonical_form(dp.tree);
    report.checks.push_back(std::move(w));

    // tau spot checks at the full vector and at every unit vector below it.
    const TauTable tau(q, costs);
    std::vector<DegreeVector> probes{q};
    for (int i = 1; i <= m - 1; ++i) {
      if (q[i] == 0) continue;
      DegreeVector v = q;
      --v[i];
      probes.push_back(v);
    }
    for (const auto& u : probes) {
      for (int t : {1, 2}) {
        std::vector<std::pair<std::string, std::string>> tp{{"u", u.to_string()}, {"t", std::to_string(t)}};
        try {
          report.checks.push_back(
              compare("tau", tp, to_string(tau.value(u, t)), to_string(oracle_tau(u, t, costs, budget))));
        } catch (const BudgetExceeded& e) {
          report.checks.push_back(skipped("tau", tp, e.what()));
        }
      }
    }
  }

  const StarSynthesis synth = complexity_then_latency(n, costs);
  report.checks.push_back(compare("star_structure", {{"n", ns}},
                                  "valid C=" + to_string(synth.complexity) + " L=" + to_string(synth.latency),
                                  structure_summary(synth.structure, costs)));
}

void iso_checks(int n, const CostModel& costs, const EnumerationBudget& budget, VerifyReport& report) {
  const int m = costs.max_fan_in();
  const std::string ns = std::to_string(n);

  std::optional<Rational> oracle_best;
  std::vector<TypeVector> oracle_optimal;
  for (const auto& w : enumerate_type_vectors(n - 1, m)) {
    const Rational l = iso_latency(w, costs);
    if (!oracle_best || l < *oracle_best) {
      oracle_best = l;
      oracle_optimal.assign(1, w);
    } else if (l == *oracle_best) {
      oracle_optimal.push_back(w);
    }
  }
  std::optional<IsoLatencyResult> dp;
  try {
    dp = min_iso_latency(n, costs);
  } catch (const InfeasibleError&) {
  }
  report.checks.push_back(compare("min_iso_latency", {{"n", ns}},
                                  dp ? to_string(dp->value) + " " + join(dp->optimal) : "infeasible",
                                  oracle_best ? to_string(*oracle_best) + " " + join(oracle_optimal)
                                              : "infeasible"));
  if (dp) {
    const IsoSynthesis synth = synthesize_isomorphic(n, costs);
    report.checks.push_back(compare("iso_structure", {{"n", ns}, {"w", synth.type_vector.to_string()}},
                                    "valid C=" + to_string(synth.complexity) + " L=" + to_string(synth.latency),
                                    structure_summary(synth.structure, costs)));
    for (const auto& w : dp->optimal) {
      std::vector<std::pair<std::string, std::string>> params{{"n", ns}, {"w", w.to_string()}};
      try {
        const LabelingSearch s = labeling_search(iso_drt_from_type_vector(w), costs, budget);
        auto r = compare("labeling_lower_bound", params, to_string(s.bound), to_string(s.best));
        r.pass = r.pass && s.consecutive_achieves && !s.below_bound;
        r.witness = std::to_string(s.structures) + " labelled structures, " + std::to_string(s.achievers) +
                    " optimal";
        report.checks.push_back(std::move(r));
      } catch (const BudgetExceeded& e) {
        report.checks.push_back(skipped("labeling_lower_bound", params, e.what()));
      }
    }
  }

  const IsoSynthesis pruned = min_latency_pruned(n, costs);
  std::vector<std::pair<std::string, std::string>> params{{"n", ns}, {"n_expanded", std::to_string(pruned.expanded_size)}};
  try {
    const ShapeSet drts = enumerate_drts(n - 1, m, Strategy::partition, budget);
    std::optional<Rational> best;
    std::string form;
    for (const int root : drts.roots) {
      const Rational l = drts.pool.latency(root, costs);
      if (!best || l < *best) {
        best = l;
        form = drts.pool.canonical_form(root);
      }
    }
    auto r = compare("latency_dominance", params, to_string(pruned.latency), to_string(*best));
    r.witness = form;
    report.checks.push_back(std::move(r));
  } catch (const BudgetExceeded& e) {
    report.checks.push_back(skipped("latency_dominance", params, e.what()));
  }
  report.checks.push_back(compare("pruned_structure", params, "valid L=" + to_string(pruned.latency),
                                  [&] {
                                    const auto v = validate(pruned.structure);
                                    return v.ok() ? "valid L=" + to_string(latency(pruned.structure, costs))
                                                  : std::string("invalid");
                                  }()));
}

}  // namespace

VerifyReport verify_report(int n, const CostModel& costs, const EnumerationBudget& budget) {
  VerifyReport report;
  report.n = n;
  if (n < 2) {
    report.checks.push_back(compare("input_size", {{"n", std::to_string(n)}}, "n >= 2", "n < 2"));
    return report;
  }
  star_checks(n, costs, budget, report);
  if (n >= 3) iso_checks(n, costs, budget, report);
  return report;
}

}  // namespace mpstruct
