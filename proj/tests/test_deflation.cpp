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

#include <gtest/gtest.h>

#include <map>

#include "ndvc/container.hpp"
#include "ndvc/deflation.hpp"
#include "ndvc/error.hpp"
#include "ndvc/guided.hpp"
#include "test_util.hpp"

using namespace ndvc;

namespace {

constexpr int kGop = 4;

const Sequence& r0_decoded(int qp) {
  static std::map<int, Sequence> cache;
  auto it = cache.find(qp);
  if (it == cache.end()) it = cache.emplace(qp, encode_sequence(testing_util::small_clip(), qp, kGop).recon).first;
  return it->second;
}

}  // namespace

TEST(Deflate, InflateReproducesSimulcastExactly) {
  const Sequence& source = testing_util::small_clip();
  for (int qp : {12, 18, 24, 30}) {
    const DeflateResult d = deflate(source, r0_decoded(8), qp, kGop);
    EXPECT_TRUE(d.cs.dtc_present);
    const EncodeResult sim = encode_sequence(source, qp, kGop);
    EXPECT_EQ(d.simulcast.rep, sim.rep) << qp;
    const EncodeResult back = inflate(r0_decoded(8), d.cs);
    EXPECT_EQ(back.rep, sim.rep) << qp;
    EXPECT_EQ(back.recon, sim.recon) << qp;

    const Bytes r0_bytes = write_representation(encode_sequence(source, 8, kGop).rep);
    EXPECT_EQ(inflate(r0_bytes, write_control_stream(d.cs)), write_representation(sim.rep)) << qp;
  }
}

TEST(Deflate, LosslessR0GivesZeroDeltas) {
  const Sequence& source = testing_util::small_clip();
  const DeflateResult d = deflate(source, source, 18, kGop);
  EXPECT_DOUBLE_EQ(dtc_nonzero_fraction(d.cs), 0.0);
}

TEST(Deflate, ZeroDeltasMatchGuidedEncode) {
  const Sequence& source = testing_util::small_clip();
  ControlStream cs = deflate(source, r0_decoded(8), 18, kGop).cs;
  ControlStream plain = cs;
  plain.dtc_present = false;
  for (ControlFrame& f : plain.frames) f.dtc.reset();
  for (ControlFrame& f : cs.frames) {
    for (Block8& b : f.dtc->blocks) b.fill(0);
  }
  EXPECT_EQ(inflate(r0_decoded(8), cs).rep, guided_encode(r0_decoded(8), plain, 18).rep);
}

TEST(Deflate, MissingDeltasAreRejected) {
  ControlStream cs = deflate(testing_util::small_clip(), r0_decoded(8), 18, kGop).cs;
  cs.frames[2].dtc.reset();
  EXPECT_THROW(inflate(r0_decoded(8), cs), CorruptionError);
  cs.dtc_present = false;
  EXPECT_THROW(inflate(r0_decoded(8), cs), CorruptionError);
}

TEST(Deflate, FinerR0GivesSparserDeltas) {
  const Sequence& source = testing_util::small_clip();
  const double fine = dtc_nonzero_fraction(deflate(source, r0_decoded(4), 18, kGop).cs);
  const double coarse = dtc_nonzero_fraction(deflate(source, r0_decoded(12), 18, kGop).cs);
  EXPECT_LE(fine, coarse);
}

TEST(Deflate, CoarsePointsHaveFewDeltas) {
  const double f = dtc_nonzero_fraction(deflate(testing_util::small_clip(), r0_decoded(8), 48, kGop).cs);
  RecordProperty("dtc_nonzero_fraction_qp48", std::to_string(f));
  EXPECT_LT(f, 0.01);
}

TEST(Deflate, DeflatedControlStreamSmallerThanSimulcast) {
  const Sequence& source = testing_util::small_clip();
  for (int qp : {12, 18, 24, 30}) {
    const DeflateResult d = deflate(source, r0_decoded(8), qp, kGop);
    const std::size_t deflated = write_control_stream(d.cs).size();
    const std::size_t simulcast = write_representation(d.simulcast.rep).size();
    RecordProperty("deflated_qp" + std::to_string(qp), std::to_string(deflated));
    RecordProperty("simulcast_qp" + std::to_string(qp), std::to_string(simulcast));
    EXPECT_LT(deflated, simulcast) << qp;
  }
}
