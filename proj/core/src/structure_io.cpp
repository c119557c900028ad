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

#include "mpstruct/structure_io.hpp"

#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "json.hpp"
#include "mpstruct/errors.hpp"

namespace mpstruct {

namespace {

NodeLabel parse_label(const nlohmann::json& value, const std::string& where) {
  if (value.is_null()) return NodeLabel::internal();
  if (!value.is_string()) throw ParseError(where, "label must be a string or null");
  const auto text = value.get<std::string>();
  if (text.size() < 2 || (text[0] != 'x' && text[0] != 'y')) {
    throw ParseError(where, "label '" + text + "' is not of the form x<j> or y<j>");
  }
  int index = 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9' || index > 1'000'000) {
      throw ParseError(where, "label '" + text + "' is not of the form x<j> or y<j>");
    }
    index = index * 10 + (text[i] - '0');
  }
  return text[0] == 'x' ? NodeLabel::input(index) : NodeLabel::output(index);
}

int read_int(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number_integer()) {
    throw ParseError(std::string("/") + key, "missing or not an integer");
  }
  return doc.at(key).get<int>();
}

std::string dot_name(const Dag& g, NodeId v) {
  const auto label = g.label(v).to_string();
  return label.empty() ? "n" + std::to_string(v) : label;
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "dot") return Format::dot;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected json or dot)");
}

std::string to_json(const Dag& g) {
  nlohmann::ordered_json doc;
  doc["n"] = g.input_size();
  doc["m"] = g.max_fan_in();
  auto nodes = nlohmann::ordered_json::array();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    nlohmann::ordered_json node;
    node["id"] = v;
    if (g.label(v).is_internal()) {
      node["label"] = nullptr;
    } else {
      node["label"] = g.label(v).to_string();
    }
    nodes.push_back(std::move(node));
  }
  doc["nodes"] = std::move(nodes);
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [child, parent] : g.edges()) {
    edges.push_back(nlohmann::ordered_json::array({child, parent}));
  }
  doc["edges"] = std::move(edges);
  return doc.dump() + "\n";
}

std::string to_dot(const Dag& g) {
  std::ostringstream out;
  out << "digraph structure {\n";
  out << "  rankdir=TB;\n";
  out << "  // n=" << g.input_size() << " m=" << g.max_fan_in() << "\n";
  std::vector<NodeId> inputs;
  std::vector<NodeId> outputs;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto& label = g.label(v);
    if (label.is_input()) {
      inputs.push_back(v);
    } else if (label.is_output()) {
      outputs.push_back(v);
    }
  }
  out << "  { rank=source;";
  for (const auto v : inputs) out << ' ' << dot_name(g, v) << ';';
  out << " }\n";
  out << "  { rank=sink;";
  for (const auto v : outputs) out << ' ' << dot_name(g, v) << ';';
  out << " }\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto& label = g.label(v);
    out << "  " << dot_name(g, v);
    if (label.is_input()) {
      out << " [shape=circle];\n";
    } else if (label.is_output()) {
      out << " [shape=doublecircle, xlabel=\"f" << g.fan_in(v) << "\"];\n";
    } else {
      out << " [shape=box, label=\"f" << g.fan_in(v) << "\"];\n";
    }
  }
  for (const auto& [child, parent] : g.edges()) {
    out << "  " << dot_name(g, child) << " -> " << dot_name(g, parent) << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_structure(const Dag& g, Format format) {
  return format == Format::json ? to_json(g) : to_dot(g);
}

Dag parse_structure_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "invalid JSON");
  }
  if (!doc.is_object()) throw ParseError("/", "structure must be a JSON object");
  const int n = read_int(doc, "n");
  const int m = read_int(doc, "m");
  if (n < 1) throw ParseError("/n", "input size must be positive");
  if (m < 2) throw ParseError("/m", "maximum fan-in must be at least 2");
  if (!doc.contains("nodes") || !doc.at("nodes").is_array()) {
    throw ParseError("/nodes", "missing or not an array");
  }
  if (!doc.contains("edges") || !doc.at("edges").is_array()) {
    throw ParseError("/edges", "missing or not an array");
  }

  Dag g(n, m);
  std::map<std::int64_t, NodeId> ids;
  const auto& nodes = doc.at("nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto where = "/nodes/" + std::to_string(i);
    const auto& node = nodes[i];
    if (!node.is_object() || !node.contains("id") || !node.at("id").is_number_integer()) {
      throw ParseError(where, "node needs an integer \"id\"");
    }
    const auto id = node.at("id").get<std::int64_t>();
    const auto label = node.contains("label") ? parse_label(node.at("label"), where + "/label")
                                              : NodeLabel::internal();
    if (!ids.emplace(id, g.add_node(label)).second) {
      throw ParseError(where + "/id", "duplicate node id " + std::to_string(id));
    }
  }
  const auto& edges = doc.at("edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto where = "/edges/" + std::to_string(i);
    const auto& edge = edges[i];
    if (!edge.is_array() || edge.size() != 2 || !edge[0].is_number_integer() ||
        !edge[1].is_number_integer()) {
      throw ParseError(where, "edge must be [child_id, parent_id]");
    }
    const auto child = ids.find(edge[0].get<std::int64_t>());
    const auto parent = ids.find(edge[1].get<std::int64_t>());
    if (child == ids.end() || parent == ids.end()) {
      throw ParseError(where, "edge references an unknown node id");
    }
    try {
      g.add_edge(child->second, parent->second);
    } catch (const StructureError& e) {
      throw ParseError(where, e.what());
    }
  }
  return g;
}

Dag import_structure(std::string_view text) {
  auto g = parse_structure_json(text);
  const auto report = validate(g);
  if (!report.ok()) {
    std::string message = "not a valid structure:";
    for (const auto& v : report.violations) {
      message += "\n  [" + to_string(v.check) + "] " + v.message;
    }
    for (const auto check : report.skipped) {
      message += "\n  [" + to_string(check) + "] not evaluated";
    }
    throw StructureError(message);
  }
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace mpstruct
