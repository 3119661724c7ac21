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

// Bit-exact coding of the decision and residual layers.
//
// Decision layer, per macroblock in raster order:
//   split flag (1 bit)
//   per part (one if unsplit, four in Z order if split):
//     ue(mode tag)                  DC=0, H=1, V=2, Inter=3
//     se(dx - px), se(dy - py)      Inter only; (px, py) from the left 8x8 cell
// Residual layer, per 8x8 block:
//   ue(nonzero count), then per nonzero level: ue(zero run), se(level)
// Each layer is zero-padded to a byte boundary by the caller.

#include <cstdlib>
#include <string>

#include "codec_internal.hpp"
#include "ndvc/bitio.hpp"
#include "ndvc/codec.hpp"
#include "ndvc/error.hpp"

namespace ndvc {

using detail::macroblock_position;
using detail::ModeGrid;
using detail::quadrant_position;

namespace {

constexpr std::int32_t kMaxLevelMagnitude = (1 << 15) - 1;

void write_part(BitWriter& out, const PredMode& mode, MotionVector predictor) {
  out.write_ue(static_cast<std::uint32_t>(mode.kind));
  if (mode.is_inter()) {
    out.write_se(mode.mv.dx - predictor.dx);
    out.write_se(mode.mv.dy - predictor.dy);
  }
}

PredMode read_part(BitReader& in, FrameType type, MotionVector predictor) {
  const std::uint32_t tag = in.read_ue();
  if (tag > static_cast<std::uint32_t>(PredKind::kInter)) {
    throw CorruptionError("unknown prediction mode tag " + std::to_string(tag));
  }
  const auto kind = static_cast<PredKind>(tag);
  if (kind != PredKind::kInter) return PredMode::intra(kind);
  if (type != FrameType::kPredicted) throw CorruptionError("inter mode in an intra frame");
  const MotionVector mv{predictor.dx + in.read_se(), predictor.dy + in.read_se()};
  if (std::abs(mv.dx) > kSearchRange || std::abs(mv.dy) > kSearchRange) {
    throw CorruptionError("motion vector outside the search range");
  }
  return PredMode::inter(mv);
}

}  // namespace

int part_decision_bits(const PredMode& mode, MotionVector predictor) {
  int bits = ue_length(static_cast<std::uint32_t>(mode.kind));
  if (mode.is_inter()) bits += se_length(mode.mv.dx - predictor.dx) + se_length(mode.mv.dy - predictor.dy);
  return bits;
}

int residual_block_bits(const Block8& levels) {
  int bits = 0;
  int nonzero = 0;
  int run = 0;
  for (std::int32_t level : levels) {
    if (level == 0) {
      ++run;
      continue;
    }
    ++nonzero;
    bits += ue_length(static_cast<std::uint32_t>(run)) + se_length(level);
    run = 0;
  }
  return bits + ue_length(static_cast<std::uint32_t>(nonzero));
}

void write_decision_layer(BitWriter& out, const FrameDecisions& decisions, int width, int height) {
  const int mb_count = macroblock_count(width, height);
  if (decisions.blocks.size() != static_cast<std::size_t>(mb_count)) {
    throw InvalidArgument("decision count does not match the frame size");
  }
  ModeGrid grid(width, height);
  for (int m = 0; m < mb_count; ++m) {
    const BlockPosition mb = macroblock_position(width, m);
    const BlockDecision& block = decisions.blocks[m];
    out.write_bit(block.split());
    if (!block.split()) {
      write_part(out, block.part(0), grid.predictor(mb));
      grid.set(mb, kMacroblockSize, block.part(0));
      continue;
    }
    for (int qd = 0; qd < 4; ++qd) {
      const BlockPosition pos = quadrant_position(mb, qd);
      write_part(out, block.part(qd), grid.predictor(pos));
      grid.set(pos, kPartSize, block.part(qd));
    }
  }
}

FrameDecisions read_decision_layer(BitReader& in, FrameType type, int width, int height) {
  const int mb_count = macroblock_count(width, height);
  ModeGrid grid(width, height);
  FrameDecisions out;
  out.type = type;
  out.blocks.reserve(mb_count);
  for (int m = 0; m < mb_count; ++m) {
    const BlockPosition mb = macroblock_position(width, m);
    if (!in.read_bit()) {
      const PredMode mode = read_part(in, type, grid.predictor(mb));
      grid.set(mb, kMacroblockSize, mode);
      out.blocks.push_back({mode});
      continue;
    }
    SplitModes modes;
    for (int qd = 0; qd < 4; ++qd) {
      const BlockPosition pos = quadrant_position(mb, qd);
      modes[qd] = read_part(in, type, grid.predictor(pos));
      grid.set(pos, kPartSize, modes[qd]);
    }
    out.blocks.push_back({modes});
  }
  return out;
}

void write_residual_block(BitWriter& out, const Block8& levels) {
  std::uint32_t nonzero = 0;
  for (std::int32_t level : levels) {
    if (level != 0) ++nonzero;
  }
  out.write_ue(nonzero);
  std::uint32_t run = 0;
  for (std::int32_t level : levels) {
    if (level == 0) {
      ++run;
      continue;
    }
    if (level > kMaxLevelMagnitude || level < -kMaxLevelMagnitude) {
      throw InvalidArgument("coefficient level " + std::to_string(level) + " exceeds 15 bits");
    }
    out.write_ue(run);
    out.write_se(level);
    run = 0;
  }
}

Block8 read_residual_block(BitReader& in) {
  Block8 levels{};
  const std::uint32_t nonzero = in.read_ue();
  if (nonzero > 64) throw CorruptionError("more than 64 nonzero levels in a block");
  std::size_t pos = 0;
  for (std::uint32_t i = 0; i < nonzero; ++i) {
    pos += in.read_ue();
    if (pos >= levels.size()) throw CorruptionError("zero run overruns the block");
    const std::int32_t level = in.read_se();
    if (level == 0 || level > kMaxLevelMagnitude || level < -kMaxLevelMagnitude) {
      throw CorruptionError("invalid coefficient level " + std::to_string(level));
    }
    levels[pos++] = level;
  }
  return levels;
}

void write_residual_layer(BitWriter& out, const ResidualLevels& levels) {
  for (const Block8& block : levels.blocks) write_residual_block(out, block);
}

ResidualLevels read_residual_layer(BitReader& in, std::size_t block_count) {
  ResidualLevels out;
  out.blocks.reserve(block_count);
  for (std::size_t i = 0; i < block_count; ++i) out.blocks.push_back(read_residual_block(in));
  return out;
}

}  // namespace ndvc
