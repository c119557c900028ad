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

#include "mpstruct/star_optimizer.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "mpstruct/errors.hpp"

namespace mpstruct {

ComplexityTable min_star_complexity(int n, const CostModel& costs) {
  if (n < 2) throw std::invalid_argument("input size must be at least 2");
  const int m = costs.max_fan_in();
  ComplexityTable table;
  table.max_fan_in = m;
  table.best.assign(static_cast<std::size_t>(n) + 1, Rational(0));
  table.choices.assign(static_cast<std::size_t>(n) + 1, {});

  for (int i = 3; i <= n; ++i) {
    std::optional<Rational> best;
    std::vector<int> argmins;
    for (int t = 1; t <= std::min(m - 1, i - 2); ++t) {
      ++table.operations;
      const Rational candidate =
          table.best[static_cast<std::size_t>(i - t)] + Rational(t + 2) * costs.complexity_factor(t + 1);
      if (!best || candidate < *best) {
        best = candidate;
        argmins.assign(1, t);
      } else if (candidate == *best) {
        argmins.push_back(t);
      }
    }
    table.best[static_cast<std::size_t>(i)] = *best;
    table.choices[static_cast<std::size_t>(i)] = std::move(argmins);
  }
  return table;
}

std::vector<DegreeVector> optimal_degree_vectors(const ComplexityTable& table, int n, bool all) {
  if (n < 2 || n > table.max_input_size()) {
    throw std::out_of_range("input size " + std::to_string(n) + " outside the table");
  }
  const int m = table.max_fan_in;
  if (!all) {
    auto q = DegreeVector::zero(m);
    for (int i = n; i > 2;) {
      const int t = table.choices[static_cast<std::size_t>(i)].front();
      ++q[t];
      i -= t;
    }
    return {q};
  }

  // The optimal sets of different sizes share suffixes, so memoise them.
  std::vector<std::optional<std::vector<DegreeVector>>> memo(static_cast<std::size_t>(n) + 1);
  memo[2] = std::vector<DegreeVector>{DegreeVector::zero(m)};
  auto solve = [&](auto&& self, int i) -> const std::vector<DegreeVector>& {
    auto& slot = memo[static_cast<std::size_t>(i)];
    if (slot) return *slot;
    std::set<DegreeVector> out;
    for (const int t : table.choices[static_cast<std::size_t>(i)]) {
      for (DegreeVector q : self(self, i - t)) {
        ++q[t];
        out.insert(std::move(q));
      }
    }
    slot = std::vector<DegreeVector>(out.begin(), out.end());
    return *slot;
  };
  return solve(solve, n);
}

// ---------------------------------------------------------------------

TauTable::TauTable(const DegreeVector& bound, const CostModel& costs)
    : bound_(bound), max_fan_in_(costs.max_fan_in()) {
  const int dims = max_fan_in_ - 1;
  if (static_cast<int>(bound.counts.size()) != dims) {
    throw std::invalid_argument("degree vector length does not match the cost model");
  }
  std::size_t total = 1;
  strides_.resize(static_cast<std::size_t>(dims));
  for (int k = 0; k < dims; ++k) {
    if (bound.counts[static_cast<std::size_t>(k)] < 0) throw InfeasibleError("negative degree count");
    strides_[static_cast<std::size_t>(k)] = total;
    total *= static_cast<std::size_t>(bound.counts[static_cast<std::size_t>(k)] + 1);
  }
  values_.assign(total * static_cast<std::size_t>(max_fan_in_), Rational(0));
  argmin_.assign(values_.size(), 0);

  // Every entry reads only vectors of smaller norm, or the same vector
  // with fewer trees, so a norm-major sweep suffices.
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<int> norm(total);
  for (std::size_t idx = 0; idx < total; ++idx) norm[idx] = vector_at(idx).internal_nodes();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return norm[a] < norm[b]; });

  for (const std::size_t idx : order) {
    const DegreeVector u = vector_at(idx);
    if (u.is_zero()) continue;  // tau(0, t) = 0

    std::optional<Rational> best;
    for (int i = 1; i <= dims; ++i) {
      if (u[i] == 0) continue;
      ++operations_;
      const std::size_t smaller = idx - strides_[static_cast<std::size_t>(i - 1)];
      const Rational candidate = values_[slot(smaller, i + 1)] + costs.latency_factor(i + 1);
      if (!best || candidate < *best) {
        best = candidate;
        argmin_[slot(idx, 1)] = static_cast<std::size_t>(i);
      }
    }
    values_[slot(idx, 1)] = *best;

    for (int t = 2; t <= max_fan_in_; ++t) {
      std::optional<Rational> best_t;
      // Walk u' <= u in increasing index order.
      std::vector<int> sub(static_cast<std::size_t>(dims), 0);
      while (true) {
        std::size_t sub_idx = 0;
        for (int k = 0; k < dims; ++k) {
          sub_idx += strides_[static_cast<std::size_t>(k)] * static_cast<std::size_t>(sub[static_cast<std::size_t>(k)]);
        }
        ++operations_;
        const Rational candidate =
            std::max(values_[slot(sub_idx, 1)], values_[slot(idx - sub_idx, t - 1)]);
        if (!best_t || candidate < *best_t) {
          best_t = candidate;
          argmin_[slot(idx, t)] = sub_idx;
        }
        int k = 0;
        while (k < dims && sub[static_cast<std::size_t>(k)] == u.counts[static_cast<std::size_t>(k)]) {
          sub[static_cast<std::size_t>(k)] = 0;
          ++k;
        }
        if (k == dims) break;
        ++sub[static_cast<std::size_t>(k)];
      }
      values_[slot(idx, t)] = *best_t;
    }
  }
}

std::size_t TauTable::index_of(const DegreeVector& u) const {
  if (u.counts.size() != bound_.counts.size()) {
    throw std::invalid_argument("degree vector length does not match the table");
  }
  std::size_t idx = 0;
  for (std::size_t k = 0; k < u.counts.size(); ++k) {
    if (u.counts[k] < 0 || u.counts[k] > bound_.counts[k]) {
      throw std::out_of_range("degree vector " + u.to_string() + " exceeds the table bound " +
                              bound_.to_string());
    }
    idx += strides_[k] * static_cast<std::size_t>(u.counts[k]);
  }
  return idx;
}

DegreeVector TauTable::vector_at(std::size_t index) const {
  DegreeVector u = DegreeVector::zero(max_fan_in_);
  for (std::size_t k = 0; k < u.counts.size(); ++k) {
    const auto radix = static_cast<std::size_t>(bound_.counts[k] + 1);
    u.counts[k] = static_cast<int>(index % radix);
    index /= radix;
  }
  return u;
}

const Rational& TauTable::value(const DegreeVector& u, int trees) const {
  if (trees < 1 || trees > max_fan_in_) throw std::out_of_range("tree count outside [1, m]");
  return values_[slot(index_of(u), trees)];
}

int TauTable::root_choice(const DegreeVector& u) const {
  return static_cast<int>(argmin_[slot(index_of(u), 1)]);
}

DegreeVector TauTable::first_tree(const DegreeVector& u, int trees) const {
  if (trees < 2 || trees > max_fan_in_) throw std::out_of_range("tree count outside [2, m]");
  return vector_at(argmin_[slot(index_of(u), trees)]);
}

std::vector<int> TauTable::forest_witness(const DegreeVector& u, int trees, TreeShape& pool) const {
  if (trees == 1) {
    if (u.is_zero()) return {pool.add_leaf()};
    const int i = root_choice(u);
    DegreeVector rest = u;
    --rest[i];
    return {pool.add_node(forest_witness(rest, i + 1, pool))};
  }
  const DegreeVector first = first_tree(u, trees);
  DegreeVector rest = u;
  for (std::size_t k = 0; k < rest.counts.size(); ++k) rest.counts[k] -= first.counts[k];
  std::vector<int> roots = forest_witness(first, 1, pool);
  const std::vector<int> tail = forest_witness(rest, trees - 1, pool);
  roots.insert(roots.end(), tail.begin(), tail.end());
  return roots;
}

// ---------------------------------------------------------------------

StarLatencyResult min_star_latency(const DegreeVector& q, const CostModel& costs) {
  const int m = costs.max_fan_in();
  if (static_cast<int>(q.counts.size()) != m - 1) {
    throw std::invalid_argument("degree vector " + q.to_string() + " does not have m-1 = " +
                                std::to_string(m - 1) + " entries");
  }
  for (const int c : q.counts) {
    if (c < 0) throw InfeasibleError("degree vector " + q.to_string() + " has a negative entry");
  }
  if (q.is_zero()) throw InfeasibleError("the zero degree vector has no star tree with an internal node");

  const TauTable tau(q, costs);
  struct Candidate {
    Rational value;
    bool strict;
    DegreeVector u;
    int i;
    Rational heavy;
    Rational light;
  };
  std::optional<Candidate> best;
  std::size_t admitted = 0;

  auto better = [](const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.strict != b.strict) return a.strict;
    if (a.u != b.u) return a.u < b.u;
    return a.i < b.i;
  };

  // Enumerate u <= q.
  DegreeVector u = DegreeVector::zero(m);
  while (true) {
    DegreeVector light_vec = q;
    for (std::size_t k = 0; k < q.counts.size(); ++k) light_vec.counts[k] -= u.counts[k];
    const Rational& light = tau.value(light_vec, 1);
    for (int i = 1; i <= m - 1; ++i) {
      if (u[i] == 0) continue;
      DegreeVector below = u;
      --below[i];
      const Rational& forest = tau.value(below, i + 1);
      const Rational heavy = forest + costs.latency_factor(i + 1);
      if (forest > light || heavy < light) continue;
      ++admitted;
      Candidate c{heavy + light, heavy > light, u, i, heavy, light};
      if (!best || better(c, *best)) best = std::move(c);
    }
    std::size_t k = 0;
    while (k < u.counts.size() && u.counts[k] == q.counts[k]) {
      u.counts[k] = 0;
      ++k;
    }
    if (k == u.counts.size()) break;
    ++u.counts[k];
  }
  if (!best) {
    // Unreachable: every star tree has a non-strict split edge.
    throw std::logic_error("no admissible split for " + q.to_string());
  }

  TreeShape pool;
  DegreeVector below = best->u;
  --below[best->i];
  const int heavy_root = pool.add_node(tau.forest_witness(below, best->i + 1, pool));
  DegreeVector light_vec = q;
  for (std::size_t k = 0; k < q.counts.size(); ++k) light_vec.counts[k] -= best->u.counts[k];
  const int light_root = tau.forest_witness(light_vec, 1, pool).front();

  StarLatencyResult result;
  result.value = best->value;
  result.heavy_branch = best->u;
  result.root_choice = best->i;
  result.heavy_latency = best->heavy;
  result.light_latency = best->light;
  result.strict = best->strict;
  result.tree = join_branches(pool, heavy_root, light_root, m);
  result.candidates = admitted;
  return result;
}

StarSynthesis complexity_then_latency(int n, const CostModel& costs) {
  if (n < 3) throw std::invalid_argument("star synthesis needs at least 3 inputs");
  const ComplexityTable table = min_star_complexity(n, costs);
  StarSynthesis out;
  out.complexity = table.min_complexity(n);
  out.optimal_degree_vectors = optimal_degree_vectors(table, n, true);

  std::optional<StarLatencyResult> best;
  for (const DegreeVector& q : out.optimal_degree_vectors) {
    StarLatencyResult r = min_star_latency(q, costs);
    if (!best || r.value < best->value) {
      out.degree_vector = q;
      best = std::move(r);
    }
  }
  out.latency = best->value;
  out.tree = std::move(best->tree);
  out.structure = structure_from_star_tree(out.tree);
  return out;
}

}  // namespace mpstruct
