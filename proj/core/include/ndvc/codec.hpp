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

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "ndvc/media_io.hpp"
#include "ndvc/transform.hpp"

namespace ndvc {

inline constexpr int kMaxQp = 51;
inline constexpr int kMacroblockSize = 16;
inline constexpr int kPartSize = 8;
inline constexpr int kSearchRange = 8;
inline constexpr int kDefaultLambdaDivisor = 16;
inline constexpr int kDefaultGopLength = 16;

// max(1, round-half-away(2^(qp/6))); throws InvalidArgument outside [0, 51].
int step_of_qp(int qp);

struct QuantParams {
  int qp = 0;
  int step = 1;
  // lambda = step^2 / lambda_divisor.
  int lambda_divisor = kDefaultLambdaDivisor;

  static QuantParams from_qp(int qp, int lambda_divisor = kDefaultLambdaDivisor);

  // Rate-distortion cost scaled by lambda_divisor so comparisons stay integral.
  std::int64_t scaled_cost(std::int64_t ssd, std::int64_t bits) const {
    return std::int64_t{lambda_divisor} * ssd + std::int64_t{step} * step * bits;
  }
};

struct MotionVector {
  int dx = 0;
  int dy = 0;
  friend auto operator<=>(const MotionVector&, const MotionVector&) = default;
};

enum class PredKind : std::uint8_t { kIntraDC = 0, kIntraH = 1, kIntraV = 2, kInter = 3 };

struct PredMode {
  PredKind kind = PredKind::kIntraDC;
  MotionVector mv;  // zero unless kind == kInter

  static PredMode intra(PredKind k) { return {k, {}}; }
  static PredMode inter(MotionVector mv) { return {PredKind::kInter, mv}; }
  bool is_inter() const { return kind == PredKind::kInter; }

  friend bool operator==(const PredMode&, const PredMode&) = default;
};

using SplitModes = std::array<PredMode, 4>;

// One 16x16 block: either one shared mode or four 8x8 quadrant modes (Z order).
struct BlockDecision {
  std::variant<PredMode, SplitModes> arm;

  bool split() const { return std::holds_alternative<SplitModes>(arm); }
  const PredMode& part(int quadrant) const {
    return split() ? std::get<SplitModes>(arm)[quadrant] : std::get<PredMode>(arm);
  }

  friend bool operator==(const BlockDecision&, const BlockDecision&) = default;
};

enum class FrameType : std::uint8_t { kIntra = 0, kPredicted = 1 };

struct FrameDecisions {
  FrameType type = FrameType::kIntra;
  std::vector<BlockDecision> blocks;  // macroblock raster order

  friend bool operator==(const FrameDecisions&, const FrameDecisions&) = default;
};

// Quantized levels in zig-zag order, one entry per 8x8 transform block.
// Block order: macroblock raster, Z order within a macroblock.
struct ResidualLevels {
  std::vector<Block8> blocks;
  friend bool operator==(const ResidualLevels&, const ResidualLevels&) = default;
};

struct BlockPosition {
  int x = 0;
  int y = 0;
};

int macroblock_count(int width, int height);
BlockPosition part_position(int width, std::size_t block_index);

// Mode legality for an 8x8 part at (x, y) of a width x height frame.
bool mode_legal(const PredMode& mode, BlockPosition pos, int size, int width, int height, FrameType type);

// 8x8 prediction from the partially reconstructed current frame and the reference.
// Throws CorruptionError if the mode is not legal at this position.
Block8 predict(const PredMode& mode, BlockPosition pos, const Frame& recon, const Frame* reference);

// Exhaustive integer-pel SAD search in [-8, 8]^2 over in-frame displacements.
MotionVector motion_search(const Frame& reference, const Frame& source, BlockPosition pos, int size);

struct EncodedFrame {
  FrameDecisions decisions;
  ResidualLevels levels;
  Frame recon;
};

// Full rate-distortion search; reference must be present exactly for P-frames.
EncodedFrame rd_encode_frame(const Frame& source, const Frame* reference, const QuantParams& q);

// Called with each block's freshly quantized levels (zig-zag) before reconstruction;
// the hook may rewrite them.
using LevelHook = std::function<void(std::size_t block_index, Block8& levels)>;

// Residual generation under fixed decisions, no search.
EncodedFrame apply_decisions(const Frame& pixels, const Frame* reference, const FrameDecisions& decisions,
                             const QuantParams& q, const LevelHook& hook = {});

// Mirrors the encoder reconstruction loop exactly.
Frame decode_frame(const FrameDecisions& decisions, const ResidualLevels& levels, const Frame* reference,
                   const QuantParams& q, int width, int height);

// ---- sequence level ----

struct StreamInfo {
  int width = 0;
  int height = 0;
  int frame_count = 0;
  int gop_len = kDefaultGopLength;
  int qp = 0;
  friend bool operator==(const StreamInfo&, const StreamInfo&) = default;
};

struct CodedFrame {
  FrameDecisions decisions;
  ResidualLevels levels;
  friend bool operator==(const CodedFrame&, const CodedFrame&) = default;
};

struct Representation {
  StreamInfo info;
  std::vector<CodedFrame> frames;
  friend bool operator==(const Representation&, const Representation&) = default;
};

struct EncodeResult {
  Representation rep;
  Sequence recon;
};

inline FrameType frame_type_at(int index, int gop_len) {
  return index % gop_len == 0 ? FrameType::kIntra : FrameType::kPredicted;
}

// Closed GOPs: frame 0 of each GOP is intra, the rest predict from the previous recon.
EncodeResult encode_sequence(const Sequence& source, int qp, int gop_len = kDefaultGopLength);
Sequence decode_representation(const Representation& rep);

// ---- syntax (bit-exact layer coding, shared with the container) ----

class BitWriter;
class BitReader;

int part_decision_bits(const PredMode& mode, MotionVector predictor);
int residual_block_bits(const Block8& zigzag_levels);

void write_decision_layer(BitWriter& out, const FrameDecisions& decisions, int width, int height);
FrameDecisions read_decision_layer(BitReader& in, FrameType type, int width, int height);

void write_residual_block(BitWriter& out, const Block8& zigzag_levels);
Block8 read_residual_block(BitReader& in);
void write_residual_layer(BitWriter& out, const ResidualLevels& levels);
ResidualLevels read_residual_layer(BitReader& in, std::size_t block_count);

}  // namespace ndvc
