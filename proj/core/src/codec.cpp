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

#include "ndvc/codec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "codec_internal.hpp"
#include "ndvc/error.hpp"

namespace ndvc {

using detail::macroblock_position;
using detail::ModeGrid;
using detail::quadrant_position;

int step_of_qp(int qp) {
  if (qp < 0 || qp > kMaxQp) throw InvalidArgument("qp " + std::to_string(qp) + " outside [0, 51]");
  // 2^(qp/6) is never within 0.008 of a rounding tie for qp in range, so double is exact enough.
  return std::max(1, static_cast<int>(std::lround(std::exp2(qp / 6.0))));
}

QuantParams QuantParams::from_qp(int qp, int lambda_divisor) {
  if (lambda_divisor <= 0) throw InvalidArgument("lambda divisor must be positive");
  return {qp, step_of_qp(qp), lambda_divisor};
}

int macroblock_count(int width, int height) { return (width / kMacroblockSize) * (height / kMacroblockSize); }

BlockPosition part_position(int width, std::size_t block_index) {
  return quadrant_position(macroblock_position(width, block_index / 4), static_cast<int>(block_index % 4));
}

bool mode_legal(const PredMode& mode, BlockPosition pos, int size, int width, int height, FrameType type) {
  switch (mode.kind) {
    case PredKind::kIntraDC: return true;
    case PredKind::kIntraH: return pos.x > 0;
    case PredKind::kIntraV: return pos.y > 0;
    case PredKind::kInter: {
      if (type != FrameType::kPredicted) return false;
      if (std::abs(mode.mv.dx) > kSearchRange || std::abs(mode.mv.dy) > kSearchRange) return false;
      const int rx = pos.x + mode.mv.dx;
      const int ry = pos.y + mode.mv.dy;
      return rx >= 0 && ry >= 0 && rx + size <= width && ry + size <= height;
    }
  }
  return false;
}

Block8 predict(const PredMode& mode, BlockPosition pos, const Frame& recon, const Frame* reference) {
  const FrameType type = reference ? FrameType::kPredicted : FrameType::kIntra;
  if (!mode_legal(mode, pos, kPartSize, recon.width(), recon.height(), type)) {
    throw CorruptionError("prediction mode " + std::to_string(static_cast<int>(mode.kind)) +
                          " invalid at (" + std::to_string(pos.x) + "," + std::to_string(pos.y) + ")");
  }
  Block8 pred{};
  switch (mode.kind) {
    case PredKind::kIntraDC: {
      int sum = 0;
      int n = 0;
      if (pos.y > 0) {
        for (int c = 0; c < kPartSize; ++c) sum += recon.at(pos.x + c, pos.y - 1);
        n += kPartSize;
      }
      if (pos.x > 0) {
        for (int r = 0; r < kPartSize; ++r) sum += recon.at(pos.x - 1, pos.y + r);
        n += kPartSize;
      }
      pred.fill(n == 0 ? 128 : (sum + n / 2) / n);
      break;
    }
    case PredKind::kIntraH:
      for (int r = 0; r < kPartSize; ++r) {
        std::fill_n(pred.begin() + r * kPartSize, kPartSize, recon.at(pos.x - 1, pos.y + r));
      }
      break;
    case PredKind::kIntraV:
      for (int r = 0; r < kPartSize; ++r) {
        for (int c = 0; c < kPartSize; ++c) pred[r * kPartSize + c] = recon.at(pos.x + c, pos.y - 1);
      }
      break;
    case PredKind::kInter:
      for (int r = 0; r < kPartSize; ++r) {
        for (int c = 0; c < kPartSize; ++c) {
          pred[r * kPartSize + c] = reference->at(pos.x + mode.mv.dx + c, pos.y + mode.mv.dy + r);
        }
      }
      break;
  }
  return pred;
}

namespace {

// Motion tie-break: smaller |dx|+|dy|, then smaller dy, then smaller dx.
bool motion_tie_before(const MotionVector& a, const MotionVector& b) {
  const int la = std::abs(a.dx) + std::abs(a.dy);
  const int lb = std::abs(b.dx) + std::abs(b.dy);
  if (la != lb) return la < lb;
  if (a.dy != b.dy) return a.dy < b.dy;
  return a.dx < b.dx;
}

}  // namespace

MotionVector motion_search(const Frame& reference, const Frame& source, BlockPosition pos, int size) {
  MotionVector best;
  std::int64_t best_sad = std::numeric_limits<std::int64_t>::max();
  for (int dy = -kSearchRange; dy <= kSearchRange; ++dy) {
    const int ry = pos.y + dy;
    if (ry < 0 || ry + size > reference.height()) continue;
    for (int dx = -kSearchRange; dx <= kSearchRange; ++dx) {
      const int rx = pos.x + dx;
      if (rx < 0 || rx + size > reference.width()) continue;
      std::int64_t sad = 0;
      for (int r = 0; r < size && sad <= best_sad; ++r) {
        for (int c = 0; c < size; ++c) {
          sad += std::abs(int{source.at(pos.x + c, pos.y + r)} - int{reference.at(rx + c, ry + r)});
        }
      }
      const MotionVector cand{dx, dy};
      if (sad < best_sad || (sad == best_sad && motion_tie_before(cand, best))) {
        best_sad = sad;
        best = cand;
      }
    }
  }
  return best;
}

namespace {

// Adds the dequantized, inverse-transformed levels to the prediction and stores the clamped result.
void reconstruct_part(Frame& recon, BlockPosition pos, const Block8& pred, const Block8& levels, int step) {
  Block8 coeffs = from_zigzag(levels);
  for (auto& c : coeffs) c = dequantize(c, step);
  const Block8 residual = inv_transform(coeffs);
  for (int r = 0; r < kPartSize; ++r) {
    for (int c = 0; c < kPartSize; ++c) {
      const int v = pred[r * kPartSize + c] + residual[r * kPartSize + c];
      recon.at(pos.x + c, pos.y + r) = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
    }
  }
}

struct PartResult {
  Block8 levels;
  std::int64_t ssd = 0;
};

// Predict, transform, quantize and reconstruct one 8x8 part in place.
class FrameCoder {
 public:
  FrameCoder(const Frame& pixels, const Frame* reference, const QuantParams& q)
      : pixels_(pixels), reference_(reference), q_(q), recon_(pixels.width(), pixels.height()) {}

  PartResult code_part(BlockPosition pos, const PredMode& mode, std::size_t block_index = 0,
                       const LevelHook* hook = nullptr) {
    const Block8 pred = predict(mode, pos, recon_, reference_);
    Block8 residual{};
    for (int r = 0; r < kPartSize; ++r) {
      for (int c = 0; c < kPartSize; ++c) {
        residual[r * kPartSize + c] = int{pixels_.at(pos.x + c, pos.y + r)} - pred[r * kPartSize + c];
      }
    }
    Block8 coeffs = fwd_transform(residual);
    for (auto& c : coeffs) c = quantize(c, q_.step);

    PartResult out;
    out.levels = to_zigzag(coeffs);
    if (hook && *hook) (*hook)(block_index, out.levels);
    reconstruct_part(recon_, pos, pred, out.levels, q_.step);

    for (int r = 0; r < kPartSize; ++r) {
      for (int c = 0; c < kPartSize; ++c) {
        const std::int64_t d = int{pixels_.at(pos.x + c, pos.y + r)} - int{recon_.at(pos.x + c, pos.y + r)};
        out.ssd += d * d;
      }
    }
    return out;
  }

  Frame& recon() { return recon_; }
  const Frame* reference() const { return reference_; }
  const Frame& pixels() const { return pixels_; }
  const QuantParams& quant() const { return q_; }

 private:
  const Frame& pixels_;
  const Frame* reference_;
  QuantParams q_;
  Frame recon_;
};

// Candidates in tie-break order. Inter candidates are the SAD-optimal vector and
// the vector predictor (when legal and distinct), ordered by the motion tie-break.
std::vector<PredMode> candidate_modes(const FrameCoder& coder, BlockPosition pos, int size, MotionVector predictor) {
  std::vector<PredMode> modes{PredMode::intra(PredKind::kIntraDC)};
  if (pos.x > 0) modes.push_back(PredMode::intra(PredKind::kIntraH));
  if (pos.y > 0) modes.push_back(PredMode::intra(PredKind::kIntraV));
  if (const Frame* ref = coder.reference()) {
    const MotionVector searched = motion_search(*ref, coder.pixels(), pos, size);
    const PredMode from_predictor = PredMode::inter(predictor);
    if (predictor != searched &&
        mode_legal(from_predictor, pos, size, ref->width(), ref->height(), FrameType::kPredicted)) {
      const bool predictor_first = motion_tie_before(predictor, searched);
      modes.push_back(predictor_first ? from_predictor : PredMode::inter(searched));
      modes.push_back(predictor_first ? PredMode::inter(searched) : from_predictor);
    } else {
      modes.push_back(PredMode::inter(searched));
    }
  }
  return modes;
}

void check_frame_inputs(const Frame& pixels, const Frame* reference, FrameType type) {
  check_dimensions(pixels.width(), pixels.height());
  if ((type == FrameType::kPredicted) != (reference != nullptr)) {
    throw InvalidArgument("a reference frame must be given exactly for P-frames");
  }
  if (reference && !reference->same_shape(pixels)) throw InvalidArgument("reference frame size differs");
}

}  // namespace

EncodedFrame rd_encode_frame(const Frame& source, const Frame* reference, const QuantParams& q) {
  const FrameType type = reference ? FrameType::kPredicted : FrameType::kIntra;
  check_frame_inputs(source, reference, type);

  FrameCoder coder(source, reference, q);
  ModeGrid grid(source.width(), source.height());
  const int mb_count = macroblock_count(source.width(), source.height());

  EncodedFrame out;
  out.decisions.type = type;
  out.decisions.blocks.reserve(mb_count);
  out.levels.blocks.resize(static_cast<std::size_t>(mb_count) * 4);

  for (int m = 0; m < mb_count; ++m) {
    const BlockPosition mb = macroblock_position(source.width(), m);
    Block8* levels = &out.levels.blocks[static_cast<std::size_t>(m) * 4];

    // One mode shared by the four transform blocks.
    const MotionVector mb_predictor = grid.predictor(mb);
    PredMode best_shared;
    std::int64_t best_shared_cost = std::numeric_limits<std::int64_t>::max();
    for (const PredMode& mode : candidate_modes(coder, mb, kMacroblockSize, mb_predictor)) {
      std::int64_t ssd = 0;
      std::int64_t bits = 1 + part_decision_bits(mode, mb_predictor);
      for (int qd = 0; qd < 4; ++qd) {
        const PartResult r = coder.code_part(quadrant_position(mb, qd), mode);
        ssd += r.ssd;
        bits += residual_block_bits(r.levels);
      }
      const std::int64_t cost = q.scaled_cost(ssd, bits);
      if (cost < best_shared_cost) {
        best_shared_cost = cost;
        best_shared = mode;
      }
    }

    // Independent mode per 8x8 quadrant.
    SplitModes split_modes;
    std::int64_t split_cost = q.scaled_cost(0, 1);
    for (int qd = 0; qd < 4; ++qd) {
      const BlockPosition pos = quadrant_position(mb, qd);
      MotionVector predictor = grid.predictor(pos);
      if (qd % 2 == 1) predictor = split_modes[qd - 1].is_inter() ? split_modes[qd - 1].mv : MotionVector{};

      PredMode best;
      std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
      for (const PredMode& mode : candidate_modes(coder, pos, kPartSize, predictor)) {
        const PartResult r = coder.code_part(pos, mode);
        const std::int64_t cost =
            q.scaled_cost(r.ssd, part_decision_bits(mode, predictor) + residual_block_bits(r.levels));
        if (cost < best_cost) {
          best_cost = cost;
          best = mode;
        }
      }
      levels[qd] = coder.code_part(pos, best).levels;
      split_modes[qd] = best;
      split_cost += best_cost;
    }

    if (split_cost < best_shared_cost) {
      out.decisions.blocks.push_back({split_modes});
      for (int qd = 0; qd < 4; ++qd) grid.set(quadrant_position(mb, qd), kPartSize, split_modes[qd]);
    } else {
      for (int qd = 0; qd < 4; ++qd) levels[qd] = coder.code_part(quadrant_position(mb, qd), best_shared).levels;
      out.decisions.blocks.push_back({best_shared});
      grid.set(mb, kMacroblockSize, best_shared);
    }
  }
  out.recon = std::move(coder.recon());
  return out;
}

EncodedFrame apply_decisions(const Frame& pixels, const Frame* reference, const FrameDecisions& decisions,
                             const QuantParams& q, const LevelHook& hook) {
  check_frame_inputs(pixels, reference, decisions.type);
  const int mb_count = macroblock_count(pixels.width(), pixels.height());
  if (decisions.blocks.size() != static_cast<std::size_t>(mb_count)) {
    throw CorruptionError("decision count " + std::to_string(decisions.blocks.size()) + " does not match " +
                          std::to_string(mb_count) + " macroblocks");
  }

  FrameCoder coder(pixels, reference, q);
  EncodedFrame out;
  out.decisions = decisions;
  out.levels.blocks.resize(static_cast<std::size_t>(mb_count) * 4);
  for (int m = 0; m < mb_count; ++m) {
    const BlockPosition mb = macroblock_position(pixels.width(), m);
    for (int qd = 0; qd < 4; ++qd) {
      const std::size_t index = static_cast<std::size_t>(m) * 4 + qd;
      out.levels.blocks[index] =
          coder.code_part(quadrant_position(mb, qd), decisions.blocks[m].part(qd), index, &hook).levels;
    }
  }
  out.recon = std::move(coder.recon());
  return out;
}

Frame decode_frame(const FrameDecisions& decisions, const ResidualLevels& levels, const Frame* reference,
                   const QuantParams& q, int width, int height) {
  check_dimensions(width, height);
  if (decisions.type == FrameType::kIntra) reference = nullptr;
  if (!reference) {
    if (decisions.type == FrameType::kPredicted) throw CorruptionError("P-frame without a reference frame");
  } else if (reference->width() != width || reference->height() != height) {
    throw InvalidArgument("reference frame size differs");
  }
  const int mb_count = macroblock_count(width, height);
  if (decisions.blocks.size() != static_cast<std::size_t>(mb_count) ||
      levels.blocks.size() != static_cast<std::size_t>(mb_count) * 4) {
    throw CorruptionError("decision or residual block count does not match the frame size");
  }

  Frame recon(width, height);
  for (int m = 0; m < mb_count; ++m) {
    const BlockPosition mb = macroblock_position(width, m);
    for (int qd = 0; qd < 4; ++qd) {
      const BlockPosition pos = quadrant_position(mb, qd);
      const Block8 pred = predict(decisions.blocks[m].part(qd), pos, recon, reference);
      reconstruct_part(recon, pos, pred, levels.blocks[static_cast<std::size_t>(m) * 4 + qd], q.step);
    }
  }
  return recon;
}

EncodeResult encode_sequence(const Sequence& source, int qp, int gop_len) {
  source.validate();
  if (gop_len < 1 || gop_len > 255) throw InvalidArgument("GOP length must be in [1, 255]");
  const QuantParams q = QuantParams::from_qp(qp);

  EncodeResult out;
  out.rep.info = {source.width(), source.height(), source.frame_count(), gop_len, qp};
  out.recon.frame_rate = source.frame_rate;
  for (int i = 0; i < source.frame_count(); ++i) {
    const Frame* ref = frame_type_at(i, gop_len) == FrameType::kPredicted ? &out.recon.frames.back() : nullptr;
    EncodedFrame f = rd_encode_frame(source.frames[i], ref, q);
    out.rep.frames.push_back({std::move(f.decisions), std::move(f.levels)});
    out.recon.frames.push_back(std::move(f.recon));
  }
  return out;
}

Sequence decode_representation(const Representation& rep) {
  const QuantParams q = QuantParams::from_qp(rep.info.qp);
  Sequence out;
  for (std::size_t i = 0; i < rep.frames.size(); ++i) {
    const CodedFrame& f = rep.frames[i];
    const Frame* ref = f.decisions.type == FrameType::kPredicted && i > 0 ? &out.frames.back() : nullptr;
    out.frames.push_back(decode_frame(f.decisions, f.levels, ref, q, rep.info.width, rep.info.height));
  }
  return out;
}

}  // namespace ndvc
