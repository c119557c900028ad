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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mpstruct/errors.hpp"
#include "mpstruct/oracles.hpp"
#include "mpstruct/star_optimizer.hpp"

namespace mpstruct {
namespace {

using testing::model;

DegreeVector dv(std::vector<int> c) { return DegreeVector(std::move(c)); }

TEST(MinStarComplexity, WorkedValues) {
  const auto cm12 = model(3, {"1", "2"}, {"1", "1"});
  EXPECT_EQ(min_star_complexity(2, cm12).min_complexity(2), Rational(0));
  const auto t = min_star_complexity(7, cm12);
  EXPECT_EQ(t.min_complexity(7), Rational(15));
  EXPECT_EQ(optimal_degree_vectors(t, 7, true), std::vector<DegreeVector>{dv({5, 0})});
  EXPECT_EQ(optimal_degree_vectors(t, 7, false), std::vector<DegreeVector>{dv({5, 0})});

  const auto t11 = min_star_complexity(7, model(3, {"1", "1"}, {"1", "1"}));
  EXPECT_EQ(t11.min_complexity(7), Rational(11));
  EXPECT_EQ(optimal_degree_vectors(t11, 7, true), std::vector<DegreeVector>{dv({1, 2})});
  EXPECT_EQ(optimal_degree_vectors(t11, 3, true), std::vector<DegreeVector>{dv({1, 0})});
  EXPECT_THROW(min_star_complexity(1, cm12), std::invalid_argument);
}

TEST(MinStarComplexity, BinaryCaseIsForced) {
  const auto cm = model(2, {"7/3"}, {"1"});
  const auto t = min_star_complexity(30, cm);
  for (int n = 2; n <= 30; ++n) EXPECT_EQ(t.min_complexity(n), Rational(3 * (n - 2)) * Rational(7, 3));
}

TEST(MinStarComplexity, TiesReturnEveryOptimum) {
  // c_2 = 1, c_3 = 3/2: (t + 2) c_{t+1} is 3 for both t, so every q ties.
  const auto cm = model(3, {"1", "3/2"}, {"1", "1"});
  const auto t = min_star_complexity(7, cm);
  EXPECT_EQ(t.min_complexity(7), Rational(15));
  EXPECT_EQ(optimal_degree_vectors(t, 7, true), (std::vector<DegreeVector>{dv({1, 2}), dv({3, 1}), dv({5, 0})}));
  EXPECT_EQ(optimal_degree_vectors(t, 7, false).size(), 1u);
}

TEST(MinStarComplexity, MatchesExhaustiveMinimum) {
  for (int m = 2; m <= 5; ++m) {
    for (const auto& cm : testing::model_family(m)) {
      const auto t = min_star_complexity(14, cm);
      for (int n = 3; n <= 14; ++n) {
        std::optional<Rational> best;
        std::vector<DegreeVector> argmin;
        for (const auto& q : enumerate_degree_vectors(n, m)) {
          const auto c = star_complexity(q, cm);
          if (!best || c < *best) {
            best = c;
            argmin = {q};
          } else if (c == *best) {
            argmin.push_back(q);
          }
        }
        EXPECT_EQ(t.min_complexity(n), *best) << "m=" << m << " n=" << n;
        EXPECT_EQ(optimal_degree_vectors(t, n, true), argmin) << "m=" << m << " n=" << n;
      }
    }
  }
}

TEST(MinStarComplexity, OperationCountIsLinear) {
  const auto cm = CostModel::unit(4);
  const auto small = min_star_complexity(1000, cm).operations;
  const auto large = min_star_complexity(2000, cm).operations;
  EXPECT_LE(small, 3u * 1000u);
  EXPECT_LE(large, 3u * 2000u);
  EXPECT_NEAR(static_cast<double>(large) / static_cast<double>(small), 2.0, 0.05);
}

TEST(TauTable, WorkedValues) {
  const auto cm = CostModel::unit(3);
  const TauTable tau(dv({2, 0}), cm);
  for (int t = 1; t <= 3; ++t) EXPECT_EQ(tau.value(dv({0, 0}), t), Rational(0));
  EXPECT_EQ(tau.value(dv({1, 0}), 1), Rational(1));
  EXPECT_EQ(tau.value(dv({2, 0}), 1), Rational(2));
  EXPECT_EQ(tau.value(dv({2, 0}), 2), Rational(1));
  EXPECT_EQ(tau.root_choice(dv({1, 0})), 1);
  EXPECT_THROW((void)tau.value(dv({3, 0}), 1), std::out_of_range);
  EXPECT_THROW((void)tau.value(dv({1, 0}), 4), std::out_of_range);
}

TEST(TauTable, WitnessesRealiseTheirValues) {
  for (int m = 2; m <= 4; ++m) {
    for (const auto& cm : testing::model_family(m)) {
      DegreeVector bound = DegreeVector::zero(m);
      for (auto& c : bound.counts) c = m == 2 ? 4 : 2;
      const TauTable tau(bound, cm);
      std::vector<DegreeVector> all;
      auto walk = [&](auto&& self, std::size_t k, DegreeVector& u) -> void {
        if (k == u.counts.size()) {
          all.push_back(u);
          return;
        }
        for (int c = 0; c <= bound.counts[k]; ++c) {
          u.counts[k] = c;
          self(self, k + 1, u);
        }
        u.counts[k] = 0;
      };
      DegreeVector u = DegreeVector::zero(m);
      walk(walk, 0, u);
      for (const auto& v : all) {
        for (int t = 1; t <= m; ++t) {
          TreeShape pool;
          const auto roots = tau.forest_witness(v, t, pool);
          ASSERT_EQ(static_cast<int>(roots.size()), t);
          DegreeVector total = DegreeVector::zero(m);
          Rational worst(0);
          for (const int r : roots) {
            const auto d = pool.degree_vector(r, m);
            for (std::size_t k = 0; k < total.counts.size(); ++k) total.counts[k] += d.counts[k];
            worst = std::max(worst, pool.latency(r, cm));
          }
          EXPECT_EQ(total, v);
          EXPECT_EQ(worst, tau.value(v, t)) << v.to_string() << " t=" << t;
        }
      }
    }
  }
}

TEST(MinStarLatency, WorkedValues) {
  const auto unit = CostModel::unit(3);
  const auto r3 = min_star_latency(dv({1, 0}), model(3, {"1", "1"}, {"5/2", "3"}));
  EXPECT_EQ(r3.value, Rational(5, 2));
  EXPECT_EQ(r3.light_latency, Rational(0));

  const auto r7 = min_star_latency(dv({5, 0}), unit);
  EXPECT_EQ(r7.value, Rational(4));
  EXPECT_EQ(degree_vector_of(r7.tree), dv({5, 0}));
  EXPECT_EQ(star_tree_latency(r7.tree, unit), Rational(4));
}

TEST(MinStarLatency, SymmetricCaseNeedsTheTiedSplit) {
  const auto r = min_star_latency(dv({2, 0}), CostModel::unit(3));
  EXPECT_EQ(r.value, Rational(2));
  EXPECT_FALSE(r.strict);
  EXPECT_EQ(r.heavy_latency, r.light_latency);
}

TEST(MinStarLatency, ZeroLatencyModel) {
  const auto cm = model(3, {"1", "1"}, {"0", "0"});
  for (const auto& q : {dv({1, 0}), dv({3, 1}), dv({0, 4})}) {
    const auto r = min_star_latency(q, cm);
    EXPECT_EQ(r.value, Rational(0));
    EXPECT_EQ(degree_vector_of(r.tree), q);
  }
}

TEST(MinStarLatency, RejectsBadVectors) {
  EXPECT_THROW(min_star_latency(dv({0, 0}), CostModel::unit(3)), InfeasibleError);
  EXPECT_THROW(min_star_latency(dv({-1, 2}), CostModel::unit(3)), InfeasibleError);
  EXPECT_THROW(min_star_latency(dv({1}), CostModel::unit(3)), std::invalid_argument);
}

// Strictly admitted results satisfy both split conditions literally; the
// witness realises the value through the DAG evaluator.
TEST(MinStarLatency, WitnessAndConditions) {
  for (int m = 2; m <= 4; ++m) {
    for (const auto& cm : testing::model_family(m)) {
      for (int n = 3; n <= 11; ++n) {
        for (const auto& q : enumerate_degree_vectors(n, m)) {
          const auto r = min_star_latency(q, cm);
          ASSERT_EQ(degree_vector_of(r.tree), q);
          EXPECT_EQ(latency(structure_from_star_tree(r.tree), cm), r.value) << q.to_string();
          EXPECT_EQ(r.heavy_latency + r.light_latency, r.value);
          const Rational root = cm.latency_factor(r.root_choice + 1);
          EXPECT_LE(r.heavy_latency - root, r.light_latency);
          if (r.strict) {
            EXPECT_GT(r.heavy_latency, r.light_latency);
          } else {
            EXPECT_EQ(r.heavy_latency, r.light_latency);
          }
        }
      }
    }
  }
}

TEST(ComplexityThenLatency, WorkedValues) {
  const auto cm = model(3, {"1", "2"}, {"1", "1"});
  const auto s = complexity_then_latency(7, cm);
  EXPECT_EQ(s.complexity, Rational(15));
  EXPECT_EQ(s.latency, Rational(4));
  EXPECT_EQ(s.degree_vector, dv({5, 0}));
  EXPECT_TRUE(validate(s.structure).ok());
  EXPECT_EQ(complexity(s.structure, cm), Rational(15));
  EXPECT_EQ(latency(s.structure, cm), Rational(4));

  const auto cm3 = model(2, {"2"}, {"5"});
  const auto s3 = complexity_then_latency(3, cm3);
  EXPECT_EQ(s3.complexity, Rational(6));
  EXPECT_EQ(s3.latency, Rational(5));
  EXPECT_THROW(complexity_then_latency(2, cm3), std::invalid_argument);
}

TEST(ComplexityThenLatency, PicksTheFastestOptimalVector) {
  // Every q ties on complexity (see TiesReturnEveryOptimum); with l_3 = l_2
  // the vector with more 3-input nodes is faster.
  const auto cm = model(3, {"1", "3/2"}, {"1", "1"});
  const auto s = complexity_then_latency(7, cm);
  Rational best(1000);
  for (const auto& q : s.optimal_degree_vectors) best = std::min(best, min_star_latency(q, cm).value);
  EXPECT_EQ(s.latency, best);
  EXPECT_EQ(latency(s.structure, cm), s.latency);
  EXPECT_EQ(complexity(s.structure, cm), s.complexity);
}

}  // namespace
}  // namespace mpstruct
