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

#include <string>
#include <string_view>

#include "mpstruct/structure.hpp"

namespace mpstruct {

enum class Format { json, dot };

/// Parses "json" or "dot"; throws std::invalid_argument otherwise.
Format parse_format(std::string_view name);

/// {"n", "m", "nodes": [{"id", "label"}], "edges": [[child, parent], ...]}
/// Node ids are the graph's own ids; output is byte-for-byte deterministic.
std::string to_json(const Dag& g);

/// Graphviz digraph: inputs ranked as sources, outputs as sinks, and each
/// computation node annotated with its fan-in.
std::string to_dot(const Dag& g);

std::string export_structure(const Dag& g, Format format);

/// Reads the JSON schema without checking any structure property. Node
/// ids may be arbitrary distinct integers; they are renumbered densely in
/// file order. Throws ParseError with the offending location.
Dag parse_structure_json(std::string_view text);

/// parse_structure_json followed by validate(); throws StructureError
/// listing every failed check if the graph is not a valid structure.
Dag import_structure(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace mpstruct
