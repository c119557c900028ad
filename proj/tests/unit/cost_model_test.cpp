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

#include <sstream>

#include "fixtures.hpp"
#include "mpstruct/cost_model.hpp"
#include "mpstruct/errors.hpp"
#include "mpstruct/rational.hpp"

namespace mpstruct {
namespace {

using testing::R;

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(parse_rational("1.25"), Rational(5, 4));
  EXPECT_EQ(parse_rational("-0.5"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("2e2"), Rational(200));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Rational, FromDoubleUsesShortestDecimal) {
  EXPECT_EQ(rational_from_double(1.5), Rational(3, 2));
  EXPECT_EQ(rational_from_double(0.1), Rational(1, 10));
  EXPECT_EQ(rational_from_double(3.0), Rational(3));
}

TEST(Rational, PrintsIntegersWithoutDenominator) {
  EXPECT_EQ(to_string(Rational(23)), "23");
  EXPECT_EQ(to_string(Rational(5, 2)), "5/2");
  EXPECT_EQ(to_string(Rational(-1, 3)), "-1/3");
}

TEST(CostModel, ShortAndFullFormsAgree) {
  const auto short_form = parse_cost_model(R"({"m": 3, "c": [1, 2], "l": [1, "3/2"]})");
  const auto full_form = parse_cost_model(R"({"m": 3, "c": [0, 0, 1, 2], "l": [0, 0, 1, 1.5]})");
  EXPECT_EQ(short_form, full_form);
  EXPECT_EQ(short_form.max_fan_in(), 3);
  EXPECT_EQ(short_form.complexity_factor(3), Rational(2));
  EXPECT_EQ(short_form.latency_factor(3), Rational(3, 2));
  EXPECT_EQ(short_form.latency_factor(1), Rational(0));
}

TEST(CostModel, RejectsNonMonotoneFactorsNamingTheField) {
  try {
    parse_cost_model(R"({"m": 3, "c": [2, 1], "l": [1, 1]})");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "c[3]");
    EXPECT_NE(std::string(e.what()).find("monotonicity violated: c[3] < c[2]"), std::string::npos);
  }
}

TEST(CostModel, RejectsBadInput) {
  EXPECT_THROW(parse_cost_model(R"({"m": 3, "c": [-1, 2], "l": [1, 1]})"), ConfigError);
  EXPECT_THROW(parse_cost_model(R"({"m": 3, "c": [0, 1, 1, 2], "l": [0, 0, 1, 1]})"), ConfigError);
  EXPECT_THROW(parse_cost_model(R"({"m": 3, "c": [1, 2, 3], "l": [1, 1]})"), ConfigError);
  EXPECT_THROW(parse_cost_model(R"({"m": 1, "c": [], "l": []})"), ConfigError);
  EXPECT_THROW(parse_cost_model(R"({"m": 3, "c": [1, 2]})"), ConfigError);
  EXPECT_THROW(parse_cost_model(R"({"m": 3, "c": [1, true], "l": [1, 1]})"), ConfigError);
  EXPECT_THROW(parse_cost_model("not json"), ConfigError);
  EXPECT_THROW(load_cost_model_file("/nonexistent/costs.json"), ConfigError);
}

TEST(CostModel, SerializationRoundTrips) {
  const auto cm = testing::model(4, {"1", "5/3", "2"}, {"0", "1/2", "1/2"});
  const auto text = serialize_cost_model(cm);
  EXPECT_EQ(parse_cost_model(text), cm);
  EXPECT_EQ(serialize_cost_model(parse_cost_model(text)), text);
}

TEST(CostModel, LoadsFromStreamAndFile) {
  std::istringstream in(R"({"m": 2, "c": [3], "l": [2]})");
  EXPECT_EQ(load_cost_model(in).complexity_factor(2), Rational(3));
  const auto cm = load_cost_model_file(testing::data_path("costs_m3_c12_l11.json"));
  EXPECT_EQ(cm.complexity_factor(2), Rational(1));
  EXPECT_EQ(cm.complexity_factor(3), Rational(2));
}

TEST(CostModel, UnitModel) {
  const auto cm = CostModel::unit(4);
  for (int i = 2; i <= 4; ++i) {
    EXPECT_EQ(cm.complexity_factor(i), Rational(1));
    EXPECT_EQ(cm.latency_factor(i), Rational(1));
  }
  EXPECT_THROW((void)cm.latency_factor(5), std::out_of_range);
}

}  // namespace
}  // namespace mpstruct
