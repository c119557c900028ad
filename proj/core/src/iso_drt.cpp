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

#include "mpstruct/iso_drt.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "mpstruct/errors.hpp"

namespace mpstruct {

namespace {

constexpr std::int64_t kLeafLimit = std::int64_t{1} << 62;

std::int64_t checked_product(const std::vector<int>& factors) {
  std::int64_t p = 1;
  for (const int f : factors) {
    if (p > kLeafLimit / f) throw std::overflow_error("leaf count overflows 64 bits");
    p *= f;
  }
  return p;
}

}  // namespace

int TypeVector::levels() const noexcept {
  int total = 0;
  for (const int c : counts) total += c;
  return total;
}

std::int64_t TypeVector::leaf_count() const {
  std::vector<int> factors;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] < 0) throw std::invalid_argument("negative level count in " + to_string());
    factors.insert(factors.end(), static_cast<std::size_t>(counts[k]), static_cast<int>(k) + 2);
  }
  return checked_product(factors);
}

std::string TypeVector::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(counts[k]);
  }
  return out + ")";
}

IsoDrt::IsoDrt(std::vector<int> level_degrees, int max_fan_in)
    : level_degrees_(std::move(level_degrees)), max_fan_in_(max_fan_in) {
  for (const int d : level_degrees_) {
    if (d < 2 || d > max_fan_in_) {
      throw std::invalid_argument("level degree " + std::to_string(d) + " outside [2, " +
                                  std::to_string(max_fan_in_) + "]");
    }
  }
}

std::int64_t IsoDrt::leaf_count() const { return checked_product(level_degrees_); }

int IsoDrt::build(TreeShape& pool) const {
  auto grow = [&](auto&& self, std::size_t level) -> int {
    if (level == level_degrees_.size()) return pool.add_leaf();
    std::vector<int> kids;
    for (int c = 0; c < level_degrees_[level]; ++c) kids.push_back(self(self, level + 1));
    return pool.add_node(std::move(kids));
  };
  return grow(grow, 0);
}

std::optional<IsoDrt> as_iso_drt(const TreeShape& pool, int root, int max_fan_in) {
  std::vector<int> degrees;
  for (int v = root; !pool.is_leaf(v); v = pool.children(v).front()) {
    const int d = static_cast<int>(pool.children(v).size());
    if (d < 2 || d > max_fan_in) return std::nullopt;
    degrees.push_back(d);
  }
  IsoDrt candidate(std::move(degrees), max_fan_in);
  TreeShape scratch;
  const int r = candidate.build(scratch);
  if (scratch.canonical_form(r) != pool.canonical_form(root)) return std::nullopt;
  return candidate;
}

IsoDrt iso_drt_from_type_vector(const TypeVector& w, const std::optional<std::vector<int>>& level_order) {
  const int m = w.max_fan_in();
  std::vector<int> multiset;
  for (int i = m - 1; i >= 1; --i) {
    if (w[i] < 0) throw std::invalid_argument("negative level count in " + w.to_string());
    multiset.insert(multiset.end(), static_cast<std::size_t>(w[i]), i + 1);
  }
  if (!level_order) return IsoDrt(std::move(multiset), m);

  std::vector<int> sorted = *level_order;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (sorted != multiset) {
    throw std::invalid_argument("level order is not a permutation of the degrees of " + w.to_string());
  }
  return IsoDrt(*level_order, m);
}

TypeVector type_vector_of(const IsoDrt& d) {
  auto w = TypeVector::zero(d.max_fan_in());
  for (const int deg : d.level_degrees()) ++w[deg - 1];
  return w;
}

Labeling consecutive_labeling(const IsoDrt& d, int n) {
  if (d.leaf_count() != n - 1) {
    throw std::invalid_argument("DRT has " + std::to_string(d.leaf_count()) + " leaves, expected " +
                                std::to_string(n - 1));
  }
  Labeling out(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    auto& copy = out[static_cast<std::size_t>(j - 1)];
    for (int k = 1; k < n; ++k) copy.push_back((j - 1 + k) % n + 1);
  }
  return out;
}

Dag structure_from_iso_drt(const IsoDrt& d, const Labeling& labeling) {
  const int n = static_cast<int>(labeling.size());
  if (d.leaf_count() != n - 1) {
    throw std::invalid_argument("labeling covers " + std::to_string(n) + " copies but the DRT has " +
                                std::to_string(d.leaf_count()) + " leaves");
  }
  TreeShape pool;
  const int root = d.build(pool);
  const std::vector<int> leaves = pool.leaves_in_order(root);
  std::vector<int> leaf_slot(pool.size(), -1);
  for (std::size_t k = 0; k < leaves.size(); ++k) leaf_slot[static_cast<std::size_t>(leaves[k])] = static_cast<int>(k);

  DagBuilder builder(n, d.max_fan_in());
  for (int j = 1; j <= n; ++j) {
    const auto& labels = labeling[static_cast<std::size_t>(j - 1)];
    std::vector<int> seen = labels;
    std::sort(seen.begin(), seen.end());
    std::vector<int> expected;
    for (int k = 1; k <= n; ++k) {
      if (k != j) expected.push_back(k);
    }
    if (seen != expected) {
      throw std::invalid_argument("labeling of copy " + std::to_string(j) +
                                  " is not a bijection onto the other inputs");
    }
    auto emit = [&](auto&& self, int v) -> NodeId {
      if (pool.is_leaf(v)) return builder.input(labels[static_cast<std::size_t>(leaf_slot[static_cast<std::size_t>(v)])]);
      std::vector<NodeId> kids;
      for (const int c : pool.children(v)) kids.push_back(self(self, c));
      return builder.node(std::move(kids));
    };
    if (pool.is_leaf(root)) {
      builder.output(j, {emit(emit, root)});
    } else {
      std::vector<NodeId> kids;
      for (const int c : pool.children(root)) kids.push_back(emit(emit, c));
      builder.output(j, std::move(kids));
    }
  }
  return std::move(builder).release();
}

Rational iso_latency(const TypeVector& w, const CostModel& costs) {
  Rational total(0);
  for (int i = 1; i <= w.max_fan_in() - 1; ++i) total += Rational(w[i]) * costs.latency_factor(i + 1);
  return total;
}

Rational iso_complexity(const TypeVector& w, int n, const CostModel& costs) {
  Rational total(0);
  for (int i = 1; i <= w.max_fan_in() - 1; ++i) {
    total += Rational(n) * Rational(w[i]) * costs.complexity_factor(i + 1);
  }
  return total;
}

namespace {

// Picks the least-complexity vector among `optimal` (already ascending).
TypeVector cheapest(const std::vector<TypeVector>& optimal, int n, const CostModel& costs) {
  const TypeVector* best = nullptr;
  Rational best_cost;
  for (const auto& w : optimal) {
    const Rational c = iso_complexity(w, n, costs);
    if (!best || c < best_cost) {
      best = &w;
      best_cost = c;
    }
  }
  return *best;
}

}  // namespace

IsoLatencyResult min_iso_latency(int n, const CostModel& costs) {
  if (n < 3) throw std::invalid_argument("isomorphic synthesis needs at least 3 inputs");
  const int m = costs.max_fan_in();
  const int k = n - 1;
  IsoLatencyResult result;

  std::vector<std::optional<Rational>> best(static_cast<std::size_t>(k) + 1);
  std::vector<std::vector<int>> choices(static_cast<std::size_t>(k) + 1);
  best[1] = Rational(0);
  for (int i = 2; i <= k; ++i) {
    for (int t = 2; t <= m; ++t) {
      ++result.operations;
      if (i % t != 0 || !best[static_cast<std::size_t>(i / t)]) continue;
      const Rational candidate = *best[static_cast<std::size_t>(i / t)] + costs.latency_factor(t);
      auto& slot = best[static_cast<std::size_t>(i)];
      if (!slot || candidate < *slot) {
        slot = candidate;
        choices[static_cast<std::size_t>(i)].assign(1, t);
      } else if (candidate == *slot) {
        choices[static_cast<std::size_t>(i)].push_back(t);
      }
    }
  }
  if (!best[static_cast<std::size_t>(k)]) {
    throw InfeasibleError("n - 1 = " + std::to_string(k) + " is not a product of fan-ins in [2, " +
                          std::to_string(m) + "]; use the pruned variant (--prune)");
  }
  result.value = *best[static_cast<std::size_t>(k)];

  std::map<int, std::vector<TypeVector>> memo;
  memo[1] = {TypeVector::zero(m)};
  auto collect = [&](auto&& self, int i) -> const std::vector<TypeVector>& {
    if (auto it = memo.find(i); it != memo.end()) return it->second;
    std::set<TypeVector> out;
    for (const int t : choices[static_cast<std::size_t>(i)]) {
      for (TypeVector w : self(self, i / t)) {
        ++w[t - 1];
        out.insert(std::move(w));
      }
    }
    return memo[i] = std::vector<TypeVector>(out.begin(), out.end());
  };
  result.optimal = collect(collect, k);
  result.chosen = cheapest(result.optimal, n, costs);
  result.complexity = iso_complexity(result.chosen, n, costs);
  return result;
}

IsoSynthesis synthesize_isomorphic(int n, const CostModel& costs,
                                   const std::optional<std::vector<int>>& level_order) {
  const IsoLatencyResult r = min_iso_latency(n, costs);
  IsoSynthesis out;
  out.latency = r.value;
  out.complexity = r.complexity;
  out.type_vector = r.chosen;
  out.drt = iso_drt_from_type_vector(r.chosen, level_order);
  out.structure = structure_from_iso_drt(out.drt, consecutive_labeling(out.drt, n));
  out.expanded_size = n;
  return out;
}

IsoSynthesis min_latency_pruned(int n, const CostModel& costs) {
  if (n < 3) throw std::invalid_argument("isomorphic synthesis needs at least 3 inputs");
  const int m = costs.max_fan_in();

  // Only the ceiling chains below n - 1 are ever visited.
  std::map<int, Rational> lambda;
  std::map<int, std::vector<int>> choices;
  lambda[1] = Rational(0);
  auto solve = [&](auto&& self, int k) -> Rational {
    if (auto it = lambda.find(k); it != lambda.end()) return it->second;
    std::optional<Rational> best;
    std::vector<int> argmins;
    for (int t = 2; t <= m; ++t) {
      const Rational candidate = costs.latency_factor(t) + self(self, (k + t - 1) / t);
      if (!best || candidate < *best) {
        best = candidate;
        argmins.assign(1, t);
      } else if (candidate == *best) {
        argmins.push_back(t);
      }
    }
    choices[k] = std::move(argmins);
    return lambda[k] = *best;
  };
  const Rational value = solve(solve, n - 1);

  std::map<int, std::vector<TypeVector>> memo;
  memo[1] = {TypeVector::zero(m)};
  auto collect = [&](auto&& self, int k) -> const std::vector<TypeVector>& {
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    std::set<TypeVector> out;
    for (const int t : choices.at(k)) {
      for (TypeVector w : self(self, (k + t - 1) / t)) {
        ++w[t - 1];
        out.insert(std::move(w));
      }
    }
    return memo[k] = std::vector<TypeVector>(out.begin(), out.end());
  };

  const TypeVector* chosen = nullptr;
  std::int64_t chosen_size = 0;
  Rational chosen_cost;
  for (const TypeVector& w : collect(collect, n - 1)) {
    const std::int64_t size = w.leaf_count() + 1;
    const Rational cost = iso_complexity(w, static_cast<int>(size), costs);
    if (!chosen || size < chosen_size || (size == chosen_size && cost < chosen_cost)) {
      chosen = &w;
      chosen_size = size;
      chosen_cost = cost;
    }
  }
  if (chosen_size > std::numeric_limits<int>::max()) throw std::overflow_error("expanded size too large");

  IsoSynthesis out;
  out.latency = value;
  out.type_vector = *chosen;
  out.drt = iso_drt_from_type_vector(*chosen);
  out.expanded_size = static_cast<int>(chosen_size);
  Dag full = structure_from_iso_drt(out.drt, consecutive_labeling(out.drt, out.expanded_size));
  if (out.expanded_size == n) {
    out.structure = std::move(full);
  } else {
    PruneResult pruned = prune(full, n);
    out.structure = std::move(pruned.structure);
    out.prune_log = std::move(pruned.log);
  }
  out.complexity = complexity(out.structure, costs);
  return out;
}

}  // namespace mpstruct
