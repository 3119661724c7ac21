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

#include "ndvc/container.hpp"

#include <cstring>
#include <fstream>
#include <string>

#include "ndvc/bitio.hpp"
#include "ndvc/error.hpp"

namespace ndvc {

namespace {

constexpr char kRepresentationMagic[4] = {'N', 'D', 'V', '1'};
constexpr char kControlMagic[4] = {'N', 'D', 'C', '1'};

void put_u8(Bytes& out, std::uint32_t v) { out.push_back(static_cast<std::uint8_t>(v)); }
void put_u16(Bytes& out, std::uint32_t v) {
  put_u8(out, v & 0xff);
  put_u8(out, (v >> 8) & 0xff);
}
void put_u32(Bytes& out, std::uint32_t v) {
  put_u16(out, v & 0xffff);
  put_u16(out, v >> 16);
}

void put_layer(Bytes& out, ByteView layer) {
  put_u32(out, static_cast<std::uint32_t>(layer.size()));
  out.insert(out.end(), layer.begin(), layer.end());
}

// Bounds-checked little-endian cursor.
class Cursor {
 public:
  explicit Cursor(ByteView bytes) : bytes_(bytes) {}

  std::uint32_t u8() { return take(1)[0]; }
  std::uint32_t u16() {
    const ByteView b = take(2);
    return b[0] | (std::uint32_t{b[1]} << 8);
  }
  std::uint32_t u32() {
    const ByteView b = take(4);
    return b[0] | (std::uint32_t{b[1]} << 8) | (std::uint32_t{b[2]} << 16) | (std::uint32_t{b[3]} << 24);
  }
  ByteView take(std::size_t n) {
    if (n > bytes_.size() - pos_) throw CorruptionError("section length overruns the stream");
    const ByteView out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  ByteView bytes_;
  std::size_t pos_ = 0;
};

void check_info(const StreamInfo& info) {
  check_dimensions(info.width, info.height);
  if (info.width > 0xffff || info.height > 0xffff) throw InvalidArgument("dimensions exceed 16 bits");
  if (info.gop_len < 1 || info.gop_len > 255) throw InvalidArgument("GOP length must be in [1, 255]");
  if (info.qp < 0 || info.qp > kMaxQp) throw InvalidArgument("qp outside [0, 51]");
}

void put_info(Bytes& out, const StreamInfo& info) {
  check_info(info);
  put_u8(out, kFormatVersion);
  put_u16(out, static_cast<std::uint32_t>(info.width));
  put_u16(out, static_cast<std::uint32_t>(info.height));
  put_u32(out, static_cast<std::uint32_t>(info.frame_count));
  put_u8(out, static_cast<std::uint32_t>(info.gop_len));
  put_u8(out, static_cast<std::uint32_t>(info.qp));
}

StreamInfo take_header(Cursor& in, const char (&magic)[4], const char* what) {
  const ByteView m = in.take(4);
  if (std::memcmp(m.data(), magic, 4) != 0) throw CorruptionError(std::string("bad magic: not a ") + what);
  const std::uint32_t version = in.u8();
  if (version != kFormatVersion) {
    throw UnsupportedVersionError(std::string(what) + " version " + std::to_string(version) + " is not supported");
  }
  StreamInfo info;
  info.width = static_cast<int>(in.u16());
  info.height = static_cast<int>(in.u16());
  info.frame_count = static_cast<int>(in.u32());
  info.gop_len = static_cast<int>(in.u8());
  info.qp = static_cast<int>(in.u8());
  if (info.width == 0 || info.height == 0 || info.width % 16 || info.height % 16 || info.gop_len == 0 ||
      info.qp > kMaxQp || info.frame_count < 0) {
    throw CorruptionError(std::string("invalid ") + what + " header fields");
  }
  return info;
}

FrameType take_frame_type(Cursor& in) {
  const std::uint32_t t = in.u8();
  if (t > 1) throw CorruptionError("unknown frame type " + std::to_string(t));
  return static_cast<FrameType>(t);
}

Bytes encode_decisions(const FrameDecisions& d, const StreamInfo& info) {
  BitWriter w;
  write_decision_layer(w, d, info.width, info.height);
  return w.take();
}

Bytes encode_residuals(const ResidualLevels& levels, const StreamInfo& info) {
  if (levels.blocks.size() != static_cast<std::size_t>(macroblock_count(info.width, info.height)) * 4) {
    throw InvalidArgument("residual block count does not match the frame size");
  }
  BitWriter w;
  write_residual_layer(w, levels);
  return w.take();
}

FrameDecisions decode_decisions(ByteView layer, FrameType type, const StreamInfo& info) {
  BitReader r(layer);
  FrameDecisions d = read_decision_layer(r, type, info.width, info.height);
  if (!r.at_aligned_end()) throw CorruptionError("trailing bits in decision layer");
  return d;
}

ResidualLevels decode_residuals(ByteView layer, const StreamInfo& info) {
  BitReader r(layer);
  ResidualLevels levels =
      read_residual_layer(r, static_cast<std::size_t>(macroblock_count(info.width, info.height)) * 4);
  if (!r.at_aligned_end()) throw CorruptionError("trailing bits in residual layer");
  return levels;
}

FrameSection take_representation_frame(Cursor& in) {
  FrameSection s;
  s.offset = in.pos();
  s.type = take_frame_type(in);
  s.decision_layer = in.take(in.u32());
  s.residual_layer = in.take(in.u32());
  s.size = in.pos() - s.offset;
  return s;
}

}  // namespace

Bytes encode_representation_header(const StreamInfo& info) {
  Bytes out(kRepresentationMagic, kRepresentationMagic + 4);
  put_info(out, info);
  return out;
}

Bytes encode_control_stream_header(const StreamInfo& info, bool dtc_present) {
  Bytes out(kControlMagic, kControlMagic + 4);
  put_info(out, info);
  put_u8(out, dtc_present ? 1 : 0);
  return out;
}

Bytes write_representation(const Representation& rep) {
  if (rep.frames.size() != static_cast<std::size_t>(rep.info.frame_count)) {
    throw InvalidArgument("frame_count does not match the number of frames");
  }
  Bytes out = encode_representation_header(rep.info);
  for (const CodedFrame& f : rep.frames) {
    put_u8(out, static_cast<std::uint32_t>(f.decisions.type));
    put_layer(out, encode_decisions(f.decisions, rep.info));
    put_layer(out, encode_residuals(f.levels, rep.info));
  }
  return out;
}

RepresentationLayout parse_representation_layout(ByteView bytes) {
  Cursor in(bytes);
  RepresentationLayout layout;
  layout.info = take_header(in, kRepresentationMagic, "NDV1 representation");
  for (int i = 0; i < layout.info.frame_count; ++i) layout.frames.push_back(take_representation_frame(in));
  if (!in.done()) throw CorruptionError("trailing bytes after the last frame");
  return layout;
}

Representation read_representation(ByteView bytes) {
  const RepresentationLayout layout = parse_representation_layout(bytes);
  Representation rep;
  rep.info = layout.info;
  for (const FrameSection& s : layout.frames) {
    rep.frames.push_back(
        {decode_decisions(s.decision_layer, s.type, rep.info), decode_residuals(s.residual_layer, rep.info)});
  }
  return rep;
}

Bytes write_control_stream(const ControlStream& cs) {
  if (cs.frames.size() != static_cast<std::size_t>(cs.info.frame_count)) {
    throw InvalidArgument("frame_count does not match the number of frames");
  }
  Bytes out = encode_control_stream_header(cs.info, cs.dtc_present);
  for (const ControlFrame& f : cs.frames) {
    if (f.dtc.has_value() != cs.dtc_present) {
      throw InvalidArgument("DTC layers must be present on every frame exactly when dtc_present is set");
    }
    put_u8(out, static_cast<std::uint32_t>(f.decisions.type));
    put_layer(out, encode_decisions(f.decisions, cs.info));
    if (f.dtc) put_layer(out, encode_residuals(*f.dtc, cs.info));
  }
  return out;
}

ControlStreamLayout parse_control_stream_layout(ByteView bytes) {
  Cursor in(bytes);
  ControlStreamLayout layout;
  layout.info = take_header(in, kControlMagic, "NDC1 control stream");
  const std::uint32_t dtc = in.u8();
  if (dtc > 1) throw CorruptionError("invalid dtc_present flag");
  layout.dtc_present = dtc == 1;
  for (int i = 0; i < layout.info.frame_count; ++i) {
    FrameSection s;
    s.offset = in.pos();
    s.type = take_frame_type(in);
    s.decision_layer = in.take(in.u32());
    if (layout.dtc_present) s.dtc_layer = in.take(in.u32());
    s.size = in.pos() - s.offset;
    layout.frames.push_back(s);
  }
  if (!in.done()) throw CorruptionError("trailing bytes after the last frame");
  return layout;
}

ControlStream read_control_stream(ByteView bytes) {
  const ControlStreamLayout layout = parse_control_stream_layout(bytes);
  ControlStream cs;
  cs.info = layout.info;
  cs.dtc_present = layout.dtc_present;
  for (const FrameSection& s : layout.frames) {
    ControlFrame f{decode_decisions(s.decision_layer, s.type, cs.info), std::nullopt};
    if (cs.dtc_present) f.dtc = decode_residuals(s.dtc_layer, cs.info);
    cs.frames.push_back(std::move(f));
  }
  return cs;
}

Bytes strip_residual(ByteView representation) {
  const RepresentationLayout layout = parse_representation_layout(representation);
  Bytes out = encode_control_stream_header(layout.info, false);
  for (const FrameSection& s : layout.frames) {
    put_u8(out, static_cast<std::uint32_t>(s.type));
    put_layer(out, s.decision_layer);
  }
  return out;
}

std::vector<Segment> segment_index(ByteView representation) {
  const RepresentationLayout layout = parse_representation_layout(representation);
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < layout.frames.size(); ++i) {
    const FrameSection& s = layout.frames[i];
    if (i % static_cast<std::size_t>(layout.info.gop_len) == 0) {
      if (s.type != FrameType::kIntra) throw CorruptionError("GOP does not start with an intra frame");
      segments.push_back({s.offset, 0, static_cast<int>(i), 0});
    }
    segments.back().length += s.size;
    segments.back().frame_count += 1;
  }
  return segments;
}

std::vector<Segment> control_segment_index(ByteView control_stream) {
  const ControlStreamLayout layout = parse_control_stream_layout(control_stream);
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < layout.frames.size(); ++i) {
    const FrameSection& s = layout.frames[i];
    if (i % static_cast<std::size_t>(layout.info.gop_len) == 0) {
      if (s.type != FrameType::kIntra) throw CorruptionError("GOP does not start with an intra frame");
      segments.push_back({s.offset, 0, static_cast<int>(i), 0});
    }
    segments.back().length += s.size;
    segments.back().frame_count += 1;
  }
  return segments;
}

Bytes segment_stream(ByteView header, const Segment& segment, ByteView segment_bytes) {
  if (header.size() != kRepresentationHeaderSize && header.size() != kControlStreamHeaderSize) {
    throw InvalidArgument("segment_stream: not a stream header");
  }
  if (segment_bytes.size() != segment.length) throw InvalidArgument("segment_stream: length mismatch");
  Bytes out(header.begin(), header.end());
  // frame_count sits after magic, version, width and height.
  constexpr std::size_t kFrameCountOffset = 9;
  const auto n = static_cast<std::uint32_t>(segment.frame_count);
  for (int b = 0; b < 4; ++b) out[kFrameCountOffset + b] = static_cast<std::uint8_t>(n >> (8 * b));
  out.insert(out.end(), segment_bytes.begin(), segment_bytes.end());
  return out;
}

Representation read_segment(const StreamInfo& info, ByteView segment_bytes) {
  Cursor in(segment_bytes);
  Representation rep;
  rep.info = info;
  while (!in.done()) {
    const FrameSection s = take_representation_frame(in);
    rep.frames.push_back(
        {decode_decisions(s.decision_layer, s.type, info), decode_residuals(s.residual_layer, info)});
  }
  if (rep.frames.empty() || rep.frames.front().decisions.type != FrameType::kIntra) {
    throw CorruptionError("segment does not start with an intra frame");
  }
  rep.info.frame_count = static_cast<int>(rep.frames.size());
  return rep;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  Bytes out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
  return out;
}

void write_file(const std::filesystem::path& path, ByteView bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace ndvc
