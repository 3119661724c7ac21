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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace ndvc {

// One 8-bit luma plane. Dimensions are positive multiples of 16.
class Frame {
 public:
  Frame() = default;
  Frame(int width, int height, std::uint8_t fill = 0);
  Frame(int width, int height, std::vector<std::uint8_t> samples);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return samples_.empty(); }

  std::uint8_t at(int x, int y) const { return samples_[static_cast<std::size_t>(y) * width_ + x]; }
  std::uint8_t& at(int x, int y) { return samples_[static_cast<std::size_t>(y) * width_ + x]; }

  std::span<const std::uint8_t> samples() const { return samples_; }
  std::span<std::uint8_t> samples() { return samples_; }

  bool same_shape(const Frame& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> samples_;
};

struct Sequence {
  std::vector<Frame> frames;
  double frame_rate = 25.0;  // metadata only

  int width() const { return frames.empty() ? 0 : frames.front().width(); }
  int height() const { return frames.empty() ? 0 : frames.front().height(); }
  int frame_count() const { return static_cast<int>(frames.size()); }

  // Throws InvalidArgument unless non-empty with uniform, valid dimensions.
  void validate() const;

  friend bool operator==(const Sequence& a, const Sequence& b) { return a.frames == b.frames; }
};

// Throws InvalidArgument unless both are positive multiples of 16.
void check_dimensions(int width, int height);

Sequence read_y4m(const std::filesystem::path& path);
void write_y4m(const Sequence& seq, const std::filesystem::path& path);

Sequence read_raw(const std::filesystem::path& path, int width, int height, int count);
std::size_t write_raw(const Sequence& seq, const std::filesystem::path& path);

// Deterministic moving-square test pattern.
Sequence synth_sequence(int width, int height, int frame_count);

// PSNR over all samples; +infinity when the inputs are identical.
double psnr(const Frame& a, const Frame& b);
double psnr(const Sequence& a, const Sequence& b);
double psnr_from_sse(std::uint64_t sse, std::uint64_t sample_count);

}  // namespace ndvc
