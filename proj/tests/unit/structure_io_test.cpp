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
#include "mpstruct/structure_io.hpp"

namespace mpstruct {
namespace {

std::string parse_error_location(const std::string& text) {
  try {
    parse_structure_json(text);
  } catch (const ParseError& e) {
    return e.location();
  }
  return "<no error>";
}

TEST(StructureIo, JsonRoundTripIsByteIdentical) {
  const Dag g = testing::shared_halves_n7();
  const std::string text = to_json(g);
  const Dag back = parse_structure_json(text);
  EXPECT_EQ(to_json(back), text);
  EXPECT_TRUE(validate(back).ok());
}

TEST(StructureIo, ReadsTheFixtureFile) {
  const Dag g = import_structure(read_file(testing::data_path("shared_halves_n7.json")));
  EXPECT_EQ(complexity(g, testing::model(3, {"1", "2"}, {"1", "1"})), Rational(23));
  EXPECT_EQ(canonical_form(g, *g.find_output(1)),
            canonical_form(testing::shared_halves_n7(), *testing::shared_halves_n7().find_output(1)));
}

TEST(StructureIo, DotMarksTerminals) {
  const std::string dot = to_dot(testing::wheel_n3());
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_NE(dot.find("rank=source"), std::string::npos);
  EXPECT_NE(dot.find("rank=sink"), std::string::npos);
  EXPECT_NE(dot.find("x1 -> y2"), std::string::npos);
  EXPECT_EQ(export_structure(testing::wheel_n3(), Format::dot), dot);
}

TEST(StructureIo, FormatNames) {
  EXPECT_EQ(parse_format("json"), Format::json);
  EXPECT_EQ(parse_format("dot"), Format::dot);
  EXPECT_THROW(parse_format("svg"), std::invalid_argument);
}

TEST(StructureIo, ParseErrorsCarryLocations) {
  EXPECT_EQ(parse_error_location("{").rfind("byte ", 0), 0u);
  EXPECT_EQ(parse_error_location(R"({"n": 2, "m": 2, "edges": []})"), "/nodes");
  EXPECT_EQ(parse_error_location(R"({"n": 2, "m": 2, "nodes": [{"id": 0}, {"id": 0}], "edges": []})"),
            "/nodes/1/id");
  EXPECT_EQ(parse_error_location(R"({"n": 2, "m": 2, "nodes": [{"id": 0, "label": "z1"}], "edges": []})"),
            "/nodes/0/label");
  EXPECT_EQ(parse_error_location(R"({"n": 2, "m": 2, "nodes": [{"id": 0}], "edges": [[0, 5]]})"),
            "/edges/0");
  EXPECT_EQ(parse_error_location(
                R"({"n": 2, "m": 2, "nodes": [{"id": 0}, {"id": 1}], "edges": [[0, 1], [0, 1]]})"),
            "/edges/1");
  EXPECT_THROW(read_file("/nonexistent/structure.json"), ParseError);
}

TEST(StructureIo, ImportRejectsInvalidStructures) {
  Dag g = testing::wheel_n3();
  g.remove_edge(*g.find_input(2), *g.find_output(1));
  EXPECT_THROW(import_structure(to_json(g)), StructureError);
  EXPECT_NO_THROW(parse_structure_json(to_json(g)));
}

}  // namespace
}  // namespace mpstruct
