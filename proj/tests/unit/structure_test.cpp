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

#include <algorithm>

#include "fixtures.hpp"
#include "mpstruct/errors.hpp"
#include "mpstruct/structure.hpp"

namespace mpstruct {
namespace {

using testing::model;

bool has_failure(const ValidationReport& r, Check c) { return !r.failures(c).empty(); }

TEST(Structure, SharedHalvesFixtureCounts) {
  const Dag g = testing::shared_halves_n7();
  const auto report = validate(g);
  ASSERT_TRUE(report.ok()) << report.to_json(g);
  const auto hist = fan_in_histogram(g);
  ASSERT_GE(hist.size(), 4u);
  EXPECT_EQ(hist[3], 8u);
  EXPECT_EQ(hist[2], 7u);
  // c = (1, 2): 7 * 1 + 8 * 2
  EXPECT_EQ(complexity(g, model(3, {"1", "2"}, {"1", "1"})), Rational(23));
  // latency l_2 + l_3 with distinct factors
  EXPECT_EQ(latency(g, model(3, {"1", "2"}, {"2", "7/2"})), Rational(11, 2));
}

TEST(Structure, WheelIsTheThreeInputStructure) {
  const Dag g = testing::wheel_n3();
  EXPECT_TRUE(validate(g).ok());
  const auto cm = model(2, {"5"}, {"3"});
  EXPECT_EQ(complexity(g, cm), Rational(15));
  EXPECT_EQ(latency(g, cm), Rational(3));
  EXPECT_EQ(canonical_form(g, *g.find_output(1)), "y1(x2,x3)");
}

TEST(Structure, TwoInputsWireStraightThrough) {
  DagBuilder b(2, 2);
  b.output(1, {b.input(2)});
  b.output(2, {b.input(1)});
  const Dag g = std::move(b).release();
  EXPECT_TRUE(validate(g).ok());
  EXPECT_EQ(complexity(g, CostModel::unit(2)), Rational(0));
  EXPECT_EQ(latency(g, CostModel::unit(2)), Rational(0));
}

TEST(Structure, SingleChildOutputRejectedAboveTwoInputs) {
  Dag g(3, 2);
  const auto x1 = g.add_node(NodeLabel::input(1));
  const auto x2 = g.add_node(NodeLabel::input(2));
  const auto x3 = g.add_node(NodeLabel::input(3));
  const auto y1 = g.add_node(NodeLabel::output(1));
  const auto y2 = g.add_node(NodeLabel::output(2));
  const auto y3 = g.add_node(NodeLabel::output(3));
  g.add_edge(x2, y1);
  g.add_edge(x3, y1);
  g.add_edge(x1, y2);
  g.add_edge(x3, y2);
  g.add_edge(x1, y3);
  const auto r = validate(g);
  EXPECT_TRUE(has_failure(r, Check::fan_in));
  EXPECT_TRUE(has_failure(r, Check::output_trees));
  EXPECT_EQ(r.failures(Check::fan_in).front().witnesses, std::vector<NodeId>{y3});
  (void)x2;
}

TEST(DagBuilder, HashConsesIdenticalRequests) {
  DagBuilder b(4, 3);
  const auto a = b.node({b.input(1), b.input(2)});
  const auto again = b.node({b.input(2), b.input(1)});
  EXPECT_EQ(a, again);
  EXPECT_GE(b.merges(), 1u);
  EXPECT_THROW(b.node({b.input(1), b.input(1)}), StructureError);
  EXPECT_THROW(b.node({b.input(1), b.input(2), b.input(3), b.input(4)}), StructureError);
}

TEST(Dag, RejectsRepeatedEdgesAndSelfLoops) {
  Dag g(2, 2);
  const auto a = g.add_node(NodeLabel::input(1));
  const auto b = g.add_node(NodeLabel::output(2));
  g.add_edge(a, b);
  EXPECT_THROW(g.add_edge(a, b), StructureError);
  EXPECT_THROW(g.add_edge(a, a), StructureError);
  g.remove_edge(a, b);
  EXPECT_FALSE(g.has_edge(a, b));
  EXPECT_THROW(g.remove_edge(a, b), StructureError);
}

TEST(Union, KeepsOneCopyOfSharedSubtrees) {
  DagBuilder left(4, 3);
  left.output(4, {left.node({left.input(1), left.input(2)}), left.input(3)});
  DagBuilder right(4, 3);
  right.output(3, {right.node({right.input(1), right.input(2)}), right.input(4)});
  const Dag u = unite(std::move(left).release(), std::move(right).release());
  // four inputs, two outputs, one shared f(x1, x2)
  EXPECT_EQ(u.node_count(), 7u);
  const auto hist = fan_in_histogram(u);
  EXPECT_EQ(hist[2], 3u);
}

TEST(Union, RejectsRepeatedOutputs) {
  DagBuilder a(3, 2);
  a.output(1, {a.input(2), a.input(3)});
  const Dag g = std::move(a).release();
  EXPECT_THROW(unite(g, g), StructureError);
}

TEST(Union, UnitingAllOutputsOfAStructureIsIdempotent) {
  const Dag g = testing::shared_halves_n7();
  const Dag again = hash_cons(g);
  EXPECT_EQ(again.node_count(), g.node_count());
  EXPECT_EQ(again.edge_count(), g.edge_count());
}

TEST(Validate, ReportsCycleAndSkipsTreeChecks) {
  Dag g = testing::wheel_n3();
  const auto y1 = *g.find_output(1);
  const auto y2 = *g.find_output(2);
  g.add_edge(y1, y2);
  g.add_edge(y2, y1);
  const auto r = validate(g);
  EXPECT_TRUE(has_failure(r, Check::acyclic));
  EXPECT_FALSE(r.failures(Check::acyclic).front().witnesses.empty());
  EXPECT_NE(std::find(r.skipped.begin(), r.skipped.end(), Check::distinct_subtrees), r.skipped.end());
  EXPECT_THROW(latency(g, CostModel::unit(3)), StructureError);
}

TEST(Validate, DetectsIdenticalSubtreesWithWitnessPair) {
  Dag g(4, 3);
  std::vector<NodeId> x, y;
  for (int j = 1; j <= 4; ++j) x.push_back(g.add_node(NodeLabel::input(j)));
  for (int j = 1; j <= 4; ++j) y.push_back(g.add_node(NodeLabel::output(j)));
  // Two separate f(x1, x2) nodes feeding y3 and y4.
  const auto a = g.add_node(NodeLabel::internal());
  const auto b = g.add_node(NodeLabel::internal());
  for (const auto v : {a, b}) {
    g.add_edge(x[0], v);
    g.add_edge(x[1], v);
  }
  g.add_edge(a, y[3]);
  g.add_edge(x[2], y[3]);
  g.add_edge(b, y[2]);
  g.add_edge(x[3], y[2]);
  const auto c = g.add_node(NodeLabel::internal());
  g.add_edge(x[2], c);
  g.add_edge(x[3], c);
  g.add_edge(c, y[0]);
  g.add_edge(x[1], y[0]);
  g.add_edge(c, y[1]);
  g.add_edge(x[0], y[1]);
  const auto r = validate(g);
  ASSERT_TRUE(has_failure(r, Check::distinct_subtrees));
  const auto w = r.failures(Check::distinct_subtrees).front().witnesses;
  EXPECT_EQ(w, (std::vector<NodeId>{a, b}));
  EXPECT_TRUE(r.passed(Check::output_trees));
}

TEST(Validate, DetectsOwnInputInOutputTree) {
  Dag g = testing::wheel_n3();
  const auto y1 = *g.find_output(1);
  g.remove_edge(*g.find_input(3), y1);
  g.add_edge(*g.find_input(1), y1);
  const auto r = validate(g);
  ASSERT_TRUE(has_failure(r, Check::output_trees));
  for (const auto& v : r.failures(Check::output_trees)) EXPECT_EQ(v.witnesses.front(), y1);
}

TEST(Validate, ReportsMissingAndMisplacedTerminals) {
  Dag g = testing::wheel_n3();
  g.set_label(*g.find_output(3), NodeLabel::internal());
  const auto r = validate(g);
  EXPECT_TRUE(has_failure(r, Check::sinks));
  Dag h = testing::wheel_n3();
  h.add_node(NodeLabel::internal());
  EXPECT_TRUE(has_failure(validate(h), Check::sources));
}

TEST(Validate, ReportsBadLabels) {
  Dag g = testing::wheel_n3();
  g.add_node(NodeLabel::input(9));
  EXPECT_TRUE(has_failure(validate(g), Check::labels));
  Dag h = testing::wheel_n3();
  h.set_label(*h.find_output(2), NodeLabel::output(1));
  EXPECT_TRUE(has_failure(validate(h), Check::labels));
}

TEST(Validate, FanInAboveMaximum) {
  DagBuilder b(4, 3);
  for (int j = 1; j <= 4; ++j) {
    std::vector<NodeId> kids;
    for (int k = 1; k <= 4; ++k) {
      if (k != j) kids.push_back(b.input(k));
    }
    b.output(j, kids);
  }
  Dag g = std::move(b).release();
  g.set_max_fan_in(2);
  const auto r = validate(g);
  EXPECT_EQ(r.failures(Check::fan_in).size(), 4u);
  EXPECT_THROW(complexity(g, CostModel::unit(2)), StructureError);
}

TEST(Validate, ReportJsonNamesEveryCheck) {
  const Dag g = testing::wheel_n3();
  const auto text = validate(g).to_json(g);
  EXPECT_NE(text.find("\"valid\": true"), std::string::npos);
  for (const auto c : kAllChecks) EXPECT_NE(text.find(to_string(c)), std::string::npos);
}

TEST(Prune, DroppingTheLastInputKeepsValidityAndLatency) {
  const Dag g = testing::shared_halves_n7();
  const auto cm = model(3, {"1", "2"}, {"1", "5/2"});
  const auto pruned = prune(g, 6);
  const auto r = validate(pruned.structure);
  ASSERT_TRUE(r.ok()) << r.to_json(pruned.structure);
  EXPECT_EQ(pruned.structure.input_size(), 6);
  EXPECT_LE(latency(pruned.structure, cm), latency(g, cm));
  EXPECT_LE(complexity(pruned.structure, cm), complexity(g, cm));
}

TEST(Prune, RepeatedPruningStaysValid) {
  const Dag g = testing::shared_halves_n7();
  for (int n = 6; n >= 2; --n) {
    const auto pruned = prune(g, n);
    EXPECT_TRUE(validate(pruned.structure).ok()) << "n = " << n;
  }
}

TEST(Prune, IdentityAndBadTargets) {
  const Dag g = testing::wheel_n3();
  EXPECT_EQ(prune(g, 3).structure.node_count(), g.node_count());
  EXPECT_TRUE(prune(g, 3).log.empty());
  EXPECT_THROW(prune(g, 4), std::invalid_argument);
  EXPECT_THROW(prune(g, 1), std::invalid_argument);
}

TEST(HashCons, DropsNodesThatReachNoOutput) {
  Dag g = testing::wheel_n3();
  const auto dead = g.add_node(NodeLabel::internal());
  g.add_edge(*g.find_input(1), dead);
  g.add_edge(*g.find_input(2), dead);
  EXPECT_EQ(hash_cons(g).node_count(), testing::wheel_n3().node_count());
}

}  // namespace
}  // namespace mpstruct
