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

#include "fixtures.hpp"

namespace mpstruct::testing {

CostModel model(int m, const std::vector<std::string>& c, const std::vector<std::string>& l) {
  std::vector<Rational> cr, lr;
  for (const auto& s : c) cr.push_back(R(s));
  for (const auto& s : l) lr.push_back(R(s));
  return CostModel::create(m, std::move(cr), std::move(lr));
}

Dag shared_halves_n7() {
  DagBuilder b(7, 3);
  auto x = [&](int j) { return b.input(j); };
  const NodeId left = b.node({x(2), x(3), x(4)});
  const NodeId right = b.node({x(5), x(6), x(7)});
  b.output(1, {left, right});
  for (int j = 2; j <= 4; ++j) {
    std::vector<NodeId> kids{x(1)};
    for (int k = 2; k <= 4; ++k) {
      if (k != j) kids.push_back(x(k));
    }
    b.output(j, {right, b.node(kids)});
  }
  for (int j = 5; j <= 7; ++j) {
    std::vector<NodeId> kids{x(1)};
    for (int k = 5; k <= 7; ++k) {
      if (k != j) kids.push_back(x(k));
    }
    b.output(j, {left, b.node(kids)});
  }
  return std::move(b).release();
}

Dag wheel_n3() {
  DagBuilder b(3, 2);
  b.output(1, {b.input(2), b.input(3)});
  b.output(2, {b.input(1), b.input(3)});
  b.output(3, {b.input(1), b.input(2)});
  return std::move(b).release();
}

std::vector<CostModel> model_family(int m) {
  std::vector<CostModel> out;
  const auto k = static_cast<std::size_t>(m - 1);
  auto build = [&](auto&& c_of, auto&& l_of) {
    std::vector<Rational> c, l;
    for (std::size_t i = 0; i < k; ++i) {
      c.push_back(c_of(static_cast<int>(i) + 2));
      l.push_back(l_of(static_cast<int>(i) + 2));
    }
    out.push_back(CostModel::create(m, std::move(c), std::move(l)));
  };
  build([](int) { return Rational(1); }, [](int) { return Rational(1); });
  build([](int f) { return Rational(f - 1); }, [](int f) { return Rational(f, 2); });
  // ties c_2 = c_3, then a jump
  build([](int f) { return f <= 3 ? Rational(2) : Rational(5); }, [](int f) { return Rational(f * f, 4); });
  build([](int f) { return Rational(f * f * f); }, [](int) { return Rational(0); });
  build([](int f) { return Rational(3 * f - 1, 7); }, [](int f) { return Rational(2) - Rational(1, f); });
  return out;
}

std::string data_path(const std::string& name) {
#ifdef MPSTRUCT_TEST_DATA
  return std::string(MPSTRUCT_TEST_DATA) + "/" + name;
#else
  return name;
#endif
}

}  // namespace mpstruct::testing
