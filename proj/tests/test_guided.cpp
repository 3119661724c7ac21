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

#include <chrono>

#include "ndvc/container.hpp"
#include "ndvc/error.hpp"
#include "ndvc/guided.hpp"
#include "test_util.hpp"

using namespace ndvc;

namespace {

constexpr int kGop = 4;

struct R0Fixture {
  Sequence source;
  Representation rep;
  Bytes bytes;
  Sequence decoded;
};

const R0Fixture& r0() {
  static const R0Fixture f = [] {
    R0Fixture x;
    x.source = testing_util::small_clip();
    EncodeResult e = encode_sequence(x.source, 8, kGop);
    x.rep = e.rep;
    x.bytes = write_representation(e.rep);
    x.decoded = e.recon;
    return x;
  }();
  return f;
}

std::vector<std::vector<int>> members(const std::vector<CsGroup>& groups) {
  std::vector<std::vector<int>> out;
  for (const CsGroup& g : groups) out.push_back(g.member_qps);
  return out;
}

}  // namespace

TEST(Ladder, Validation) {
  EXPECT_NO_THROW((LadderSpec{{12, 18, 24, 30}, 8, 1}.validate()));
  EXPECT_THROW((LadderSpec{{}, 8, 1}.validate()), InvalidArgument);
  EXPECT_THROW((LadderSpec{{18, 12}, 8, 1}.validate()), InvalidArgument);
  EXPECT_THROW((LadderSpec{{12, 12}, 8, 1}.validate()), InvalidArgument);
  EXPECT_THROW((LadderSpec{{12, 18}, 12, 1}.validate()), InvalidArgument);
  EXPECT_THROW((LadderSpec{{12, 18}, 8, 3}.validate()), InvalidArgument);
  EXPECT_THROW((LadderSpec{{12, 60}, 8, 1}.validate()), InvalidArgument);
}

TEST(Ladder, GroupAssignment) {
  const std::vector<int> qps{12, 18, 24, 30};
  const auto g1 = assign_cs_groups({qps, 8, 1});
  ASSERT_EQ(g1.size(), 4u);
  EXPECT_EQ(g1[2].cs_qp, 24);

  const auto g2 = assign_cs_groups({qps, 8, 2});
  EXPECT_EQ(members(g2), (std::vector<std::vector<int>>{{12, 18}, {24, 30}}));
  EXPECT_EQ(g2[0].cs_qp, 18);
  EXPECT_EQ(g2[1].cs_qp, 30);

  const auto g4 = assign_cs_groups({qps, 8, 4});
  ASSERT_EQ(g4.size(), 1u);
  EXPECT_EQ(g4[0].cs_qp, 24);

  const auto odd = assign_cs_groups({{12, 18, 24}, 8, 2});
  EXPECT_EQ(members(odd), (std::vector<std::vector<int>>{{12, 18}, {24}}));
  EXPECT_EQ(odd[1].cs_qp, 24);

  EXPECT_EQ(cs_member_index(1), 0);
  EXPECT_EQ(cs_member_index(2), 1);
  EXPECT_EQ(cs_member_index(4), 2);
}

TEST(ControlStreamGeneration, HoldsTranscodeDecisionsOnly) {
  const ControlStream cs = generate_control_stream(r0().decoded, 18, kGop);
  EXPECT_FALSE(cs.dtc_present);
  EXPECT_EQ(cs.info.qp, 18);
  const EncodeResult full = full_transcode(r0().rep, 18);
  ASSERT_EQ(cs.frames.size(), full.rep.frames.size());
  for (std::size_t i = 0; i < cs.frames.size(); ++i) {
    EXPECT_EQ(cs.frames[i].decisions, full.rep.frames[i].decisions);
    EXPECT_FALSE(cs.frames[i].dtc.has_value());
  }
  EXPECT_LT(write_control_stream(cs).size(), write_representation(full.rep).size());
}

TEST(ControlStreamGeneration, ConstantContentIsTiny) {
  Sequence flat;
  for (int i = 0; i < 4; ++i) flat.frames.emplace_back(64, 64, 90);
  const ControlStream cs = generate_control_stream(flat, 18, 4);
  for (const ControlFrame& f : cs.frames) {
    for (const BlockDecision& b : f.decisions.blocks) {
      EXPECT_FALSE(b.split());
      const PredMode m = b.part(0);
      EXPECT_TRUE(m.kind == PredKind::kIntraDC || m == PredMode::inter({0, 0}));
    }
  }
  // 16 macroblocks, a handful of bits each, plus per-frame lengths
  EXPECT_LT(write_control_stream(cs).size(), kControlStreamHeaderSize + 4 * 20);
}

TEST(GuidedEncode, AtNativeQpEqualsFullTranscode) {
  for (int qp : {12, 18, 30}) {
    const Bytes cs = write_control_stream(generate_control_stream(r0().decoded, qp, kGop));
    EXPECT_EQ(guided_encode(r0().bytes, cs, qp), full_transcode(r0().bytes, qp)) << qp;
  }
}

TEST(GuidedEncode, Deterministic) {
  const Bytes cs = write_control_stream(generate_control_stream(r0().decoded, 24, kGop));
  EXPECT_EQ(guided_encode(r0().bytes, cs, 18), guided_encode(r0().bytes, cs, 18));
}

TEST(GuidedEncode, OtherQpDecodesWithRecordedQuality) {
  const ControlStream cs = generate_control_stream(r0().decoded, 24, kGop);
  for (int qp : {18, 30}) {
    const EncodeResult guided = guided_encode(r0().decoded, cs, qp);
    EXPECT_EQ(decode_representation(guided.rep), guided.recon);
    const double native = psnr(r0().source, full_transcode(r0().rep, qp).recon);
    const double gap = native - psnr(r0().source, guided.recon);
    RecordProperty("psnr_gap_qp" + std::to_string(qp), std::to_string(gap));
    EXPECT_LE(gap, 1.5) << qp;
    EXPECT_NEAR(gap, qp == 18 ? 0.0110 : 0.5837, 1e-3) << qp;
  }
}

TEST(GuidedEncode, AtR0QpIsANewEncode) {
  const Bytes cs = write_control_stream(generate_control_stream(r0().decoded, 8, kGop));
  const Bytes out = guided_encode(r0().bytes, cs, 8);
  EXPECT_NE(out, r0().bytes);
  EXPECT_GT(psnr(r0().decoded, decode_representation(read_representation(out))), 45.0);
}

TEST(GuidedEncode, RejectsMismatchedControlStream) {
  ControlStream cs = generate_control_stream(r0().decoded, 18, kGop);
  cs.dtc_present = true;
  EXPECT_THROW(guided_encode(r0().decoded, cs, 18), InvalidArgument);
  ControlStream other = generate_control_stream(synth_sequence(32, 32, 8), 18, kGop);
  EXPECT_THROW(guided_encode(r0().decoded, other, 18), InvalidArgument);
}

TEST(GuidedEncode, MuchFasterThanFullTranscode) {
  const Sequence big = synth_sequence(128, 128, 8);
  const Representation rep = encode_sequence(big, 8, 8).rep;
  const ControlStream cs = generate_control_stream(decode_representation(rep), 18, 8);
  const Sequence decoded = decode_representation(rep);
  using clock = std::chrono::steady_clock;
  double guided = 1e9;
  double full = 1e9;
  for (int rep_i = 0; rep_i < 3; ++rep_i) {
    auto t0 = clock::now();
    full_transcode(rep, 18);
    auto t1 = clock::now();
    guided_encode(decoded, cs, 18);
    auto t2 = clock::now();
    full = std::min(full, std::chrono::duration<double>(t1 - t0).count());
    guided = std::min(guided, std::chrono::duration<double>(t2 - t1).count());
  }
  EXPECT_LE(guided, 0.30 * full) << "guided " << guided << " s, full " << full << " s";
}

TEST(Storage, SharingControlStreamsReducesStoredBytes) {
  const std::vector<int> qps{12, 18, 24, 30};
  std::vector<std::size_t> totals;
  for (int reps : {1, 2, 4}) {
    std::size_t total = r0().bytes.size();
    for (const CsGroup& g : assign_cs_groups({qps, 8, reps})) {
      total += write_control_stream(generate_control_stream(r0().decoded, g.cs_qp, kGop)).size();
    }
    totals.push_back(total);
  }
  EXPECT_GT(totals[0], totals[1]);
  EXPECT_GT(totals[1], totals[2]);
}
