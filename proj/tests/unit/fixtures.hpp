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

// Shared test fixtures. Values here are built by hand, never by the code
// under test.

#include <string>
#include <vector>

#include "mpstruct/cost_model.hpp"
#include "mpstruct/rational.hpp"
#include "mpstruct/structure.hpp"

namespace mpstruct::testing {

inline Rational R(const std::string& text) { return parse_rational(text); }

/// Cost model from short-form factor strings (fan-in 2..m).
CostModel model(int m, const std::vector<std::string>& c, const std::vector<std::string>& l);

/// n = 7, m = 3: y_1 = f(f(x2,x3,x4), f(x5,x6,x7)); y_j for j in {2,3,4}
/// pairs f(x5,x6,x7) with f(x1, the other two of {x2,x3,x4}), and
/// symmetrically for j in {5,6,7}. Eight 3-input and seven 2-input nodes.
Dag shared_halves_n7();

/// The 3-input "wheel": y_j = f(the two other inputs).
Dag wheel_n3();

/// A deterministic family of cost models used by property sweeps:
/// unit, increasing, ties, steep, and fractional.
std::vector<CostModel> model_family(int m);

std::string data_path(const std::string& name);

}  // namespace mpstruct::testing
