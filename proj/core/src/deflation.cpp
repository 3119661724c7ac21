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

#include "ndvc/deflation.hpp"

#include <stdexcept>
#include <string>

#include "ndvc/error.hpp"

namespace ndvc {

DeflateResult deflate(const Sequence& source, const Sequence& r0_decoded, int qp_k, int gop_len) {
  source.validate();
  r0_decoded.validate();
  if (source.frame_count() != r0_decoded.frame_count() || source.width() != r0_decoded.width() ||
      source.height() != r0_decoded.height()) {
    throw InvalidArgument("source and decoded R_0 differ in shape");
  }
  if (gop_len < 1 || gop_len > 255) throw InvalidArgument("GOP length must be in [1, 255]");
  const QuantParams q = QuantParams::from_qp(qp_k);

  DeflateResult out;
  out.cs.info = {source.width(), source.height(), source.frame_count(), gop_len, qp_k};
  out.cs.dtc_present = true;
  out.simulcast.rep.info = out.cs.info;
  out.simulcast.recon.frame_rate = source.frame_rate;

  for (int t = 0; t < source.frame_count(); ++t) {
    const Frame* ref = frame_type_at(t, gop_len) == FrameType::kPredicted ? &out.simulcast.recon.frames.back() : nullptr;
    EncodedFrame sim = rd_encode_frame(source.frames[t], ref, q);

    ResidualLevels delta;
    delta.blocks.resize(sim.levels.blocks.size());
    const EncodedFrame check = apply_decisions(
        r0_decoded.frames[t], ref, sim.decisions, q, [&](std::size_t i, Block8& levels) {
          for (std::size_t k = 0; k < levels.size(); ++k) delta.blocks[i][k] = sim.levels.blocks[i][k] - levels[k];
          levels = sim.levels.blocks[i];
        });
    if (check.recon != sim.recon) throw std::logic_error("deflate: reconstruction loops diverged");

    out.cs.frames.push_back({sim.decisions, std::move(delta)});
    out.simulcast.rep.frames.push_back({std::move(sim.decisions), std::move(sim.levels)});
    out.simulcast.recon.frames.push_back(std::move(sim.recon));
  }
  return out;
}

EncodeResult inflate(const Sequence& r0_decoded, const ControlStream& cs) {
  r0_decoded.validate();
  if (!cs.dtc_present) throw CorruptionError("control stream carries no DTC layer");
  if (cs.info.width != r0_decoded.width() || cs.info.height != r0_decoded.height() ||
      cs.info.frame_count != r0_decoded.frame_count()) {
    throw InvalidArgument("control stream shape does not match the decoded R_0");
  }
  const QuantParams q = QuantParams::from_qp(cs.info.qp);

  EncodeResult out;
  out.rep.info = cs.info;
  out.recon.frame_rate = r0_decoded.frame_rate;
  for (std::size_t t = 0; t < cs.frames.size(); ++t) {
    const ControlFrame& cf = cs.frames[t];
    if (!cf.dtc) throw CorruptionError("frame " + std::to_string(t) + " lacks its DTC layer");
    if (cf.dtc->blocks.size() != static_cast<std::size_t>(macroblock_count(cs.info.width, cs.info.height)) * 4) {
      throw CorruptionError("DTC block count does not match the frame size");
    }
    if (cf.decisions.type == FrameType::kPredicted && t == 0) throw CorruptionError("first frame is not intra");
    const Frame* ref = cf.decisions.type == FrameType::kPredicted ? &out.recon.frames.back() : nullptr;
    EncodedFrame f = apply_decisions(r0_decoded.frames[t], ref, cf.decisions, q, [&](std::size_t i, Block8& levels) {
      for (std::size_t k = 0; k < levels.size(); ++k) levels[k] += cf.dtc->blocks[i][k];
    });
    out.rep.frames.push_back({std::move(f.decisions), std::move(f.levels)});
    out.recon.frames.push_back(std::move(f.recon));
  }
  return out;
}

Bytes inflate(ByteView r0, ByteView cs) {
  const Sequence decoded = decode_representation(read_representation(r0));
  return write_representation(inflate(decoded, read_control_stream(cs)).rep);
}

double dtc_nonzero_fraction(const ControlStream& cs) {
  std::size_t nonzero = 0;
  std::size_t total = 0;
  for (const ControlFrame& f : cs.frames) {
    if (!f.dtc) continue;
    for (const Block8& b : f.dtc->blocks) {
      for (std::int32_t v : b) nonzero += v != 0;
      total += b.size();
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(nonzero) / static_cast<double>(total);
}

}  // namespace ndvc
