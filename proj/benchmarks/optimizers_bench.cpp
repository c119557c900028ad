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

#include <benchmark/benchmark.h>

#include "mpstruct/iso_drt.hpp"
#include "mpstruct/star_optimizer.hpp"

namespace {

using mpstruct::CostModel;
using mpstruct::DegreeVector;
using mpstruct::Rational;

CostModel bench_model(int m) {
  std::vector<Rational> c, l;
  for (int f = 2; f <= m; ++f) {
    c.push_back(Rational(f - 1));
    l.push_back(Rational(f + 1, 2));
  }
  return CostModel::create(m, std::move(c), std::move(l));
}

void BM_MinStarComplexity(benchmark::State& state) {
  const auto cm = bench_model(4);
  const int n = static_cast<int>(state.range(0));
  std::size_t ops = 0;
  for (auto _ : state) {
    auto t = mpstruct::min_star_complexity(n, cm);
    ops = t.operations;
    benchmark::DoNotOptimize(t);
  }
  state.counters["operations"] = static_cast<double>(ops);
  state.SetComplexityN(n);
}
BENCHMARK(BM_MinStarComplexity)->RangeMultiplier(4)->Range(64, 65536)->Complexity(benchmark::oN);

void BM_TauTable(benchmark::State& state) {
  const auto cm = bench_model(3);
  const int k = static_cast<int>(state.range(0));
  const DegreeVector bound({k, k});
  for (auto _ : state) {
    mpstruct::TauTable table(bound, cm);
    benchmark::DoNotOptimize(table);
  }
  state.counters["entries"] = static_cast<double>((k + 1) * (k + 1));
}
BENCHMARK(BM_TauTable)->DenseRange(4, 24, 4);

void BM_MinStarLatency(benchmark::State& state) {
  const auto cm = bench_model(3);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = mpstruct::min_star_latency(DegreeVector({k, k}), cm);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_MinStarLatency)->DenseRange(4, 16, 4);

void BM_MinIsoLatency(benchmark::State& state) {
  const auto cm = bench_model(5);
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = mpstruct::min_iso_latency(n + 1, cm);
    benchmark::DoNotOptimize(r);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_MinIsoLatency)->RangeMultiplier(4)->Range(64, 65536)->Complexity(benchmark::oN);

void BM_MinLatencyPruned(benchmark::State& state) {
  const auto cm = bench_model(3);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = mpstruct::min_latency_pruned(n, cm);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_MinLatencyPruned)->Arg(11)->Arg(29)->Arg(83);

}  // namespace

BENCHMARK_MAIN();
