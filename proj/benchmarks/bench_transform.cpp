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

#include "ndvc/transform.hpp"

namespace {

ndvc::Block8 random_block(int lo, int hi) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> d(lo, hi);
  ndvc::Block8 b{};
  for (auto& v : b) v = d(rng);
  return b;
}

void BM_ForwardTransform(benchmark::State& state) {
  ndvc::Block8 x = random_block(-255, 255);
  for (auto _ : state) {
    benchmark::DoNotOptimize(x);
    benchmark::DoNotOptimize(ndvc::fwd_transform(x));
  }
}
BENCHMARK(BM_ForwardTransform);

void BM_InverseTransform(benchmark::State& state) {
  ndvc::Block8 c = random_block(-2000, 2000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(c);
    benchmark::DoNotOptimize(ndvc::inv_transform(c));
  }
}
BENCHMARK(BM_InverseTransform);

void BM_QuantizeBlock(benchmark::State& state) {
  ndvc::Block8 c = random_block(-2000, 2000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(c);
    ndvc::Block8 out;
    for (int i = 0; i < 64; ++i) out[i] = ndvc::quantize(c[i], 16);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_QuantizeBlock);

}  // namespace

BENCHMARK_MAIN();
