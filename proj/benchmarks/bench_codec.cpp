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

#include "ndvc/codec.hpp"
#include "ndvc/guided.hpp"
#include "ndvc/media_io.hpp"

namespace {

struct FramePair {
  ndvc::Sequence clip = ndvc::synth_sequence(128, 128, 2);
  ndvc::QuantParams q = ndvc::QuantParams::from_qp(18);
  ndvc::EncodedFrame intra = ndvc::rd_encode_frame(clip.frames[0], nullptr, q);
  ndvc::EncodedFrame inter = ndvc::rd_encode_frame(clip.frames[1], &intra.recon, q);
};

const FramePair& pair() {
  static const FramePair p;
  return p;
}

void BM_RdEncodePFrame(benchmark::State& state) {
  const FramePair& p = pair();
  for (auto _ : state) benchmark::DoNotOptimize(ndvc::rd_encode_frame(p.clip.frames[1], &p.intra.recon, p.q));
}
BENCHMARK(BM_RdEncodePFrame)->Unit(benchmark::kMillisecond);

void BM_ApplyDecisionsPFrame(benchmark::State& state) {
  const FramePair& p = pair();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ndvc::apply_decisions(p.clip.frames[1], &p.intra.recon, p.inter.decisions, p.q));
  }
}
BENCHMARK(BM_ApplyDecisionsPFrame)->Unit(benchmark::kMillisecond);

void BM_DecodePFrame(benchmark::State& state) {
  const FramePair& p = pair();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ndvc::decode_frame(p.inter.decisions, p.inter.levels, &p.intra.recon, p.q, 128, 128));
  }
}
BENCHMARK(BM_DecodePFrame)->Unit(benchmark::kMillisecond);

void BM_MotionSearch16(benchmark::State& state) {
  const FramePair& p = pair();
  for (auto _ : state) benchmark::DoNotOptimize(ndvc::motion_search(p.intra.recon, p.clip.frames[1], {48, 48}, 16));
}
BENCHMARK(BM_MotionSearch16);

void BM_GuidedVsFullTranscode(benchmark::State& state) {
  static const ndvc::Sequence clip = ndvc::synth_sequence(128, 128, 8);
  static const ndvc::EncodeResult r0 = ndvc::encode_sequence(clip, 8, 8);
  static const ndvc::ControlStream cs = ndvc::generate_control_stream(r0.recon, 18, 8);
  const bool guided = state.range(0) != 0;
  for (auto _ : state) {
    if (guided) {
      benchmark::DoNotOptimize(ndvc::guided_encode(r0.recon, cs, 18));
    } else {
      benchmark::DoNotOptimize(ndvc::full_transcode(r0.rep, 18));
    }
  }
  state.SetLabel(guided ? "guided" : "full");
}
BENCHMARK(BM_GuidedVsFullTranscode)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
