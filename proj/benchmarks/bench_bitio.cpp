// Copyright 2026 The NDVC Authors.
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

#include <random>
#include <vector>

#include "ndvc/bitio.hpp"

namespace {

std::vector<std::int32_t> signed_values(std::size_t n) {
  std::mt19937_64 rng(5);
  std::geometric_distribution<int> mag(0.3);
  std::vector<std::int32_t> v(n);
  for (auto& x : v) x = (rng() & 1) ? mag(rng) : -mag(rng);
  return v;
}

void BM_WriteSe(benchmark::State& state) {
  const auto values = signed_values(4096);
  for (auto _ : state) {
    ndvc::BitWriter w;
    for (auto v : values) w.write_se(v);
    benchmark::DoNotOptimize(w.bytes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(values.size()));
}
BENCHMARK(BM_WriteSe);

void BM_ReadSe(benchmark::State& state) {
  const auto values = signed_values(4096);
  ndvc::BitWriter w;
  for (auto v : values) w.write_se(v);
  const auto bytes = w.take();
  for (auto _ : state) {
    ndvc::BitReader r(bytes);
    for (std::size_t i = 0; i < values.size(); ++i) benchmark::DoNotOptimize(r.read_se());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(values.size()));
}
BENCHMARK(BM_ReadSe);

}  // namespace

BENCHMARK_MAIN();
