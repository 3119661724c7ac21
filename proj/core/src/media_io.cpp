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

#include "ndvc/media_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "ndvc/error.hpp"

namespace ndvc {

namespace {

std::string describe(const std::filesystem::path& path) { return "'" + path.string() + "'"; }

enum class Chroma { kMono, k420 };

struct Y4mHeader {
  int width = 0;
  int height = 0;
  double frame_rate = 25.0;
  Chroma chroma = Chroma::kMono;
};

Y4mHeader parse_y4m_header(const std::string& line, const std::filesystem::path& path) {
  std::istringstream tokens(line);
  std::string magic;
  tokens >> magic;
  if (magic != "YUV4MPEG2") throw FormatError("not a Y4M file: " + describe(path));

  Y4mHeader header;
  std::string token;
  while (tokens >> token) {
    const std::string value = token.substr(1);
    switch (token[0]) {
      case 'W': header.width = std::stoi(value); break;
      case 'H': header.height = std::stoi(value); break;
      case 'F': {
        const auto colon = value.find(':');
        if (colon == std::string::npos) throw FormatError("bad Y4M frame rate '" + value + "'");
        const double num = std::stod(value.substr(0, colon));
        const double den = std::stod(value.substr(colon + 1));
        if (num > 0 && den > 0) header.frame_rate = num / den;
        break;
      }
      case 'C':
        if (value == "mono") {
          header.chroma = Chroma::kMono;
        } else if (value == "420" || value == "420jpeg" || value == "420paldv" || value == "420mpeg2") {
          header.chroma = Chroma::k420;
        } else {
          throw UnsupportedFormatError("unsupported Y4M chroma tag 'C" + value + "'");
        }
        break;
      default:  // I, A, X: interlacing, aspect, comments are ignored
        break;
    }
  }
  if (header.width <= 0 || header.height <= 0) throw FormatError("Y4M header lacks W/H in " + describe(path));
  return header;
}

}  // namespace

Frame::Frame(int width, int height, std::uint8_t fill)
    : width_(width), height_(height), samples_(static_cast<std::size_t>(width) * height, fill) {
  check_dimensions(width, height);
}

Frame::Frame(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  check_dimensions(width, height);
  if (samples_.size() != static_cast<std::size_t>(width) * height) {
    throw InvalidArgument("frame sample count does not match " + std::to_string(width) + "x" +
                          std::to_string(height));
  }
}

void check_dimensions(int width, int height) {
  if (width <= 0 || height <= 0 || width % 16 != 0 || height % 16 != 0) {
    throw InvalidArgument("dimensions " + std::to_string(width) + "x" + std::to_string(height) +
                          " are not positive multiples of 16");
  }
}

void Sequence::validate() const {
  if (frames.empty()) throw InvalidArgument("empty sequence");
  for (const Frame& f : frames) {
    if (!f.same_shape(frames.front())) throw InvalidArgument("sequence frames differ in size");
  }
}

Sequence read_y4m(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + describe(path));

  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty file " + describe(path));
  const Y4mHeader header = parse_y4m_header(line, path);
  check_dimensions(header.width, header.height);

  const std::size_t luma = static_cast<std::size_t>(header.width) * header.height;
  const std::size_t chroma = header.chroma == Chroma::k420 ? 2 * (luma / 4) : 0;

  Sequence seq;
  seq.frame_rate = header.frame_rate;
  while (std::getline(in, line)) {
    if (line.rfind("FRAME", 0) != 0) throw FormatError("expected FRAME marker in " + describe(path));
    std::vector<std::uint8_t> samples(luma);
    in.read(reinterpret_cast<char*>(samples.data()), static_cast<std::streamsize>(luma));
    if (static_cast<std::size_t>(in.gcount()) != luma) throw IoError("truncated frame payload in " + describe(path));
    if (chroma > 0) {
      in.ignore(static_cast<std::streamsize>(chroma));
      if (static_cast<std::size_t>(in.gcount()) != chroma) {
        throw IoError("truncated chroma payload in " + describe(path));
      }
    }
    seq.frames.emplace_back(header.width, header.height, std::move(samples));
  }
  if (seq.frames.empty()) throw FormatError("no frames in " + describe(path));
  return seq;
}

void write_y4m(const Sequence& seq, const std::filesystem::path& path) {
  seq.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create " + describe(path));
  // Frame rate written as an integer ratio with millisecond resolution.
  const long num = std::lround(seq.frame_rate * 1000.0);
  out << "YUV4MPEG2 W" << seq.width() << " H" << seq.height() << " F" << num << ":1000 Ip A1:1 Cmono\n";
  for (const Frame& f : seq.frames) {
    out << "FRAME\n";
    out.write(reinterpret_cast<const char*>(f.samples().data()), static_cast<std::streamsize>(f.samples().size()));
  }
  if (!out) throw IoError("write failed for " + describe(path));
}

Sequence read_raw(const std::filesystem::path& path, int width, int height, int count) {
  check_dimensions(width, height);
  if (count < 1) throw InvalidArgument("frame count must be at least 1");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + describe(path));

  const std::size_t plane = static_cast<std::size_t>(width) * height;
  Sequence seq;
  for (int i = 0; i < count; ++i) {
    std::vector<std::uint8_t> samples(plane);
    in.read(reinterpret_cast<char*>(samples.data()), static_cast<std::streamsize>(plane));
    if (static_cast<std::size_t>(in.gcount()) != plane) {
      throw IoError(describe(path) + " holds fewer than " + std::to_string(count) + " frames of " +
                    std::to_string(width) + "x" + std::to_string(height));
    }
    seq.frames.emplace_back(width, height, std::move(samples));
  }
  return seq;
}

std::size_t write_raw(const Sequence& seq, const std::filesystem::path& path) {
  seq.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create " + describe(path));
  std::size_t total = 0;
  for (const Frame& f : seq.frames) {
    out.write(reinterpret_cast<const char*>(f.samples().data()), static_cast<std::streamsize>(f.samples().size()));
    total += f.samples().size();
  }
  if (!out) throw IoError("write failed for " + describe(path));
  return total;
}

Sequence synth_sequence(int width, int height, int frame_count) {
  check_dimensions(width, height);
  if (frame_count < 1) throw InvalidArgument("frame count must be at least 1");
  if (width == 16 || height == 16) {
    throw InvalidArgument("synthetic pattern needs both dimensions greater than 16");
  }

  Sequence seq;
  for (int t = 0; t < frame_count; ++t) {
    Frame f(width, height);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        f.at(x, y) = static_cast<std::uint8_t>((((x + 3 * t) % 256) + ((y + t) % 256)) / 2);
      }
    }
    const int sx = (8 + 2 * t) % (width - 16);
    const int sy = (8 + t) % (height - 16);
    for (int y = sy; y < sy + 16; ++y) {
      for (int x = sx; x < sx + 16; ++x) f.at(x, y) = 220;
    }
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

double psnr_from_sse(std::uint64_t sse, std::uint64_t sample_count) {
  if (sse == 0) return std::numeric_limits<double>::infinity();
  const double mse = static_cast<double>(sse) / static_cast<double>(sample_count);
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

namespace {

std::uint64_t sse(const Frame& a, const Frame& b) {
  std::uint64_t total = 0;
  const auto sa = a.samples();
  const auto sb = b.samples();
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const int d = int{sa[i]} - int{sb[i]};
    total += static_cast<std::uint64_t>(d * d);
  }
  return total;
}

}  // namespace

double psnr(const Frame& a, const Frame& b) {
  if (!a.same_shape(b) || a.empty()) throw InvalidArgument("psnr: frame shapes differ");
  return psnr_from_sse(sse(a, b), a.samples().size());
}

double psnr(const Sequence& a, const Sequence& b) {
  if (a.frames.size() != b.frames.size() || a.frames.empty()) {
    throw InvalidArgument("psnr: frame counts differ");
  }
  std::uint64_t total = 0;
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    if (!a.frames[i].same_shape(b.frames[i])) throw InvalidArgument("psnr: frame shapes differ");
    total += sse(a.frames[i], b.frames[i]);
    count += a.frames[i].samples().size();
  }
  return psnr_from_sse(total, count);
}

}  // namespace ndvc
