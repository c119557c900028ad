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

#include "mpstruct/cost_model.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mpstruct/errors.hpp"

namespace mpstruct {

namespace {

std::string indexed(char table, std::size_t i) {
  return std::string(1, table) + "[" + std::to_string(i) + "]";
}

std::vector<Rational> expand(int m, std::vector<Rational> factors, char table) {
  const auto full = static_cast<std::size_t>(m) + 1;
  const auto brief = static_cast<std::size_t>(m) - 1;
  if (factors.size() == brief) {
    factors.insert(factors.begin(), 2, Rational(0));
  } else if (factors.size() != full) {
    throw ConfigError(std::string(1, table),
                      "expected " + std::to_string(brief) + " (fan-in 2..m) or " +
                          std::to_string(full) + " (fan-in 0..m) entries, got " +
                          std::to_string(factors.size()));
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < Rational(0)) {
      throw ConfigError(indexed(table, i), "factor must be non-negative");
    }
  }
  for (std::size_t i = 0; i < 2; ++i) {
    if (factors[i] != Rational(0)) {
      throw ConfigError(indexed(table, i), "factors for fan-in 0 and 1 must be 0");
    }
  }
  for (std::size_t i = 1; i < factors.size(); ++i) {
    if (factors[i] < factors[i - 1]) {
      throw ConfigError(indexed(table, i), "monotonicity violated: " + indexed(table, i) + " < " +
                                               indexed(table, i - 1));
    }
  }
  return factors;
}

std::vector<Rational> read_factors(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw ConfigError(key, "missing");
  }
  const auto& arr = doc.at(key);
  if (!arr.is_array()) {
    throw ConfigError(key, "must be an array");
  }
  std::vector<Rational> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& v = arr[i];
    const std::string field = std::string(key) + "[" + std::to_string(i) + "]";
    try {
      if (v.is_number_integer()) {
        out.emplace_back(v.get<std::int64_t>());
      } else if (v.is_number_float()) {
        out.push_back(rational_from_double(v.get<double>()));
      } else if (v.is_string()) {
        out.push_back(parse_rational(v.get<std::string>()));
      } else {
        throw ConfigError(field, "expected a number or a \"p/q\" string");
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(field, e.what());
    }
  }
  return out;
}

}  // namespace

CostModel CostModel::create(int max_fan_in, std::vector<Rational> complexity,
                            std::vector<Rational> latency) {
  if (max_fan_in < 2) {
    throw ConfigError("m", "maximum fan-in must be at least 2, got " + std::to_string(max_fan_in));
  }
  auto c = expand(max_fan_in, std::move(complexity), 'c');
  auto l = expand(max_fan_in, std::move(latency), 'l');
  return CostModel(max_fan_in, std::move(c), std::move(l));
}

CostModel CostModel::unit(int max_fan_in) {
  const auto k = static_cast<std::size_t>(std::max(max_fan_in - 1, 0));
  return create(max_fan_in, std::vector<Rational>(k, Rational(1)),
                std::vector<Rational>(k, Rational(1)));
}

const Rational& CostModel::complexity_factor(int fan_in) const {
  if (fan_in < 0 || fan_in > max_fan_in_) {
    throw std::out_of_range("fan-in " + std::to_string(fan_in) + " outside [0, " +
                            std::to_string(max_fan_in_) + "]");
  }
  return complexity_[static_cast<std::size_t>(fan_in)];
}

const Rational& CostModel::latency_factor(int fan_in) const {
  if (fan_in < 0 || fan_in > max_fan_in_) {
    throw std::out_of_range("fan-in " + std::to_string(fan_in) + " outside [0, " +
                            std::to_string(max_fan_in_) + "]");
  }
  return latency_[static_cast<std::size_t>(fan_in)];
}

CostModel parse_cost_model(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("", std::string("cost model is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("", "cost model must be a JSON object");
  }
  if (!doc.contains("m") || !doc.at("m").is_number_integer()) {
    throw ConfigError("m", "missing or not an integer");
  }
  const auto m = doc.at("m").get<std::int64_t>();
  if (m < 2 || m > 64) {
    throw ConfigError("m", "maximum fan-in must lie in [2, 64], got " + std::to_string(m));
  }
  return CostModel::create(static_cast<int>(m), read_factors(doc, "c"), read_factors(doc, "l"));
}

CostModel load_cost_model(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_cost_model(text);
}

CostModel load_cost_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("", "cannot open cost model '" + path + "'");
  }
  return load_cost_model(in);
}

std::string serialize_cost_model(const CostModel& model) {
  nlohmann::ordered_json doc;
  doc["m"] = model.max_fan_in();
  auto table = [](std::span<const Rational> factors) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& f : factors) arr.push_back(to_string(f));
    return arr;
  };
  doc["c"] = table(model.complexity_factors());
  doc["l"] = table(model.latency_factors());
  return doc.dump();
}

}  // namespace mpstruct
