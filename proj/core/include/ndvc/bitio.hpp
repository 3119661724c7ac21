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
#include <span>
#include <vector>

namespace ndvc {

// MSB-first bit writer over a growable byte buffer.
class BitWriter {
 public:
  void write_bits(std::uint32_t value, int n);
  void write_bit(bool bit) { write_bits(bit ? 1u : 0u, 1); }
  void write_ue(std::uint32_t v);
  void write_se(std::int32_t v);

  // Pads with zero bits up to the next byte boundary.
  void byte_align();

  std::size_t bit_count() const { return bit_count_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  // Aligns and hands over the buffer.
  std::vector<std::uint8_t> take();

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bit_count_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint32_t read_bits(int n);
  bool read_bit() { return read_bits(1) != 0; }
  std::uint32_t read_ue();
  std::int32_t read_se();

  std::size_t bit_position() const { return pos_; }
  std::size_t bits_left() const { return bytes_.size() * 8 - pos_; }

  // True when fewer than 8 bits remain and all of them are zero.
  bool at_aligned_end() const;

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

// Code lengths, identical to what BitWriter emits.
constexpr int ue_length(std::uint32_t v) {
  const std::uint64_t b = std::uint64_t{v} + 1;
  int k = 0;
  while ((b >> (k + 1)) != 0) ++k;
  return 2 * k + 1;
}

constexpr std::uint32_t se_to_ue(std::int32_t v) {
  return v > 0 ? static_cast<std::uint32_t>(2 * std::int64_t{v} - 1)
               : static_cast<std::uint32_t>(-2 * std::int64_t{v});
}

constexpr int se_length(std::int32_t v) { return ue_length(se_to_ue(v)); }

}  // namespace ndvc
