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

#include "ndvc/guided.hpp"

#include <algorithm>
#include <string>

#include "ndvc/error.hpp"

namespace ndvc {

void LadderSpec::validate() const {
  if (qps.empty()) throw InvalidArgument("ladder is empty");
  for (std::size_t i = 0; i < qps.size(); ++i) {
    if (qps[i] < 0 || qps[i] > kMaxQp) throw InvalidArgument("ladder qp " + std::to_string(qps[i]) + " outside [0, 51]");
    if (i > 0 && qps[i] <= qps[i - 1]) throw InvalidArgument("ladder qps must be strictly ascending");
  }
  if (r0_qp < 0 || r0_qp >= qps.front()) {
    throw InvalidArgument("r0 qp " + std::to_string(r0_qp) + " must be below every ladder qp");
  }
  if (reps_per_cs != 1 && reps_per_cs != 2 && reps_per_cs != 4) {
    throw InvalidArgument("representations per control stream must be 1, 2 or 4");
  }
}

int cs_member_index(int group_size) { return group_size >= 3 ? group_size - 2 : group_size - 1; }

std::vector<CsGroup> assign_cs_groups(const LadderSpec& ladder) {
  ladder.validate();
  std::vector<CsGroup> groups;
  for (std::size_t i = 0; i < ladder.qps.size(); i += ladder.reps_per_cs) {
    CsGroup g;
    const std::size_t end = std::min(ladder.qps.size(), i + ladder.reps_per_cs);
    g.member_qps.assign(ladder.qps.begin() + static_cast<std::ptrdiff_t>(i),
                        ladder.qps.begin() + static_cast<std::ptrdiff_t>(end));
    g.cs_qp = g.member_qps[cs_member_index(static_cast<int>(g.member_qps.size()))];
    groups.push_back(std::move(g));
  }
  return groups;
}

ControlStream generate_control_stream(const Sequence& r0_decoded, int qp_target, int gop_len) {
  EncodeResult full = encode_sequence(r0_decoded, qp_target, gop_len);
  ControlStream cs;
  cs.info = full.rep.info;
  for (CodedFrame& f : full.rep.frames) cs.frames.push_back({std::move(f.decisions), std::nullopt});
  return cs;
}

EncodeResult guided_encode(const Sequence& r0_decoded, const ControlStream& cs, int qp_out) {
  r0_decoded.validate();
  if (cs.dtc_present) throw InvalidArgument("guided encoding takes a control stream without DTC layers");
  if (cs.info.width != r0_decoded.width() || cs.info.height != r0_decoded.height() ||
      cs.info.frame_count != r0_decoded.frame_count()) {
    throw InvalidArgument("control stream shape does not match the decoded R_0");
  }
  const QuantParams q = QuantParams::from_qp(qp_out);

  EncodeResult out;
  out.rep.info = cs.info;
  out.rep.info.qp = qp_out;
  out.recon.frame_rate = r0_decoded.frame_rate;
  for (std::size_t i = 0; i < cs.frames.size(); ++i) {
    const FrameDecisions& d = cs.frames[i].decisions;
    if (d.type == FrameType::kPredicted && i == 0) throw CorruptionError("first frame is not intra");
    const Frame* ref = d.type == FrameType::kPredicted ? &out.recon.frames.back() : nullptr;
    EncodedFrame f = apply_decisions(r0_decoded.frames[i], ref, d, q);
    out.rep.frames.push_back({std::move(f.decisions), std::move(f.levels)});
    out.recon.frames.push_back(std::move(f.recon));
  }
  return out;
}

Bytes guided_encode(ByteView r0, ByteView cs, int qp_out) {
  const Sequence decoded = decode_representation(read_representation(r0));
  return write_representation(guided_encode(decoded, read_control_stream(cs), qp_out).rep);
}

EncodeResult full_transcode(const Representation& r0, int qp_out) {
  return encode_sequence(decode_representation(r0), qp_out, r0.info.gop_len);
}

Bytes full_transcode(ByteView r0, int qp_out) {
  return write_representation(full_transcode(read_representation(r0), qp_out).rep);
}

}  // namespace ndvc
