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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "ndvc/codec.hpp"

namespace ndvc {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline constexpr std::uint8_t kFormatVersion = 1;
// "NDV1" v u8, width u16, height u16, frame_count u32, gop_len u8, qp u8.
inline constexpr std::size_t kRepresentationHeaderSize = 15;
// "NDC1" v u8, width u16, height u16, frame_count u32, gop_len u8, native_qp u8, dtc_present u8.
inline constexpr std::size_t kControlStreamHeaderSize = 16;

// ---- representation (.ndv) ----

Bytes write_representation(const Representation& rep);
Representation read_representation(ByteView bytes);

struct FrameSection {
  FrameType type = FrameType::kIntra;
  std::size_t offset = 0;  // start of the frame_type byte
  std::size_t size = 0;    // whole section including length fields
  ByteView decision_layer;
  ByteView residual_layer;  // empty for control streams
  ByteView dtc_layer;       // control streams with dtc_present only
};

struct RepresentationLayout {
  StreamInfo info;
  std::vector<FrameSection> frames;
};

// Splits a .ndv file into its sections without entropy decoding; rejects
// length overruns and trailing bytes.
RepresentationLayout parse_representation_layout(ByteView bytes);

Bytes encode_representation_header(const StreamInfo& info);

// ---- control stream (.ndc) ----

struct ControlFrame {
  FrameDecisions decisions;
  std::optional<ResidualLevels> dtc;
  friend bool operator==(const ControlFrame&, const ControlFrame&) = default;
};

struct ControlStream {
  StreamInfo info;  // info.qp is the native qp the decisions were optimized for
  bool dtc_present = false;
  std::vector<ControlFrame> frames;
  friend bool operator==(const ControlStream&, const ControlStream&) = default;
};

struct ControlStreamLayout {
  StreamInfo info;
  bool dtc_present = false;
  std::vector<FrameSection> frames;
};

Bytes write_control_stream(const ControlStream& cs);
ControlStream read_control_stream(ByteView bytes);
ControlStreamLayout parse_control_stream_layout(ByteView bytes);
Bytes encode_control_stream_header(const StreamInfo& info, bool dtc_present);

// Residual layers dropped; decision bytes copied verbatim.
Bytes strip_residual(ByteView representation);

// ---- segments ----

struct Segment {
  std::size_t offset = 0;
  std::size_t length = 0;
  int first_frame = 0;
  int frame_count = 0;
};

// One segment per closed GOP; the header is not part of any segment.
std::vector<Segment> segment_index(ByteView representation);

// Same for a control stream; the header (including dtc_present) is excluded.
std::vector<Segment> control_segment_index(ByteView control_stream);

// A self-contained stream made of `header` (either format) with its
// frame_count replaced and the frame sections of one segment appended.
Bytes segment_stream(ByteView header, const Segment& segment, ByteView segment_bytes);

// Decodes the frame sections of one segment given the stream's header fields.
Representation read_segment(const StreamInfo& info, ByteView segment_bytes);

// ---- files ----

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, ByteView bytes);

}  // namespace ndvc
