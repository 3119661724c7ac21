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

#include "ndvc/bitio.hpp"

#include <string>

#include "ndvc/error.hpp"

namespace ndvc {

void BitWriter::write_bits(std::uint32_t value, int n) {
  if (n < 0 || n > 32) throw InvalidArgument("write_bits: width " + std::to_string(n) + " outside [0, 32]");
  if (n < 32 && (std::uint64_t{value} >> n) != 0) {
    throw InvalidArgument("write_bits: value does not fit in " + std::to_string(n) + " bits");
  }
  for (int i = n - 1; i >= 0; --i) {
    if (bit_count_ % 8 == 0) bytes_.push_back(0);
    if ((value >> i) & 1u) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bit_count_ % 8));
    ++bit_count_;
  }
}

void BitWriter::write_ue(std::uint32_t v) {
  if (v >= 0x7fffffffu) throw InvalidArgument("write_ue: value out of range");
  const std::uint32_t b = v + 1;
  int k = 0;
  while ((b >> (k + 1)) != 0) ++k;
  write_bits(0, k);
  write_bits(b, k + 1);
}

void BitWriter::write_se(std::int32_t v) {
  if (v >= (1 << 30) || v <= -(1 << 30)) throw InvalidArgument("write_se: value out of range");
  write_ue(se_to_ue(v));
}

void BitWriter::byte_align() { bit_count_ = bytes_.size() * 8; }

std::vector<std::uint8_t> BitWriter::take() {
  byte_align();
  bit_count_ = 0;
  return std::move(bytes_);
}

std::uint32_t BitReader::read_bits(int n) {
  if (n < 0 || n > 32) throw InvalidArgument("read_bits: width " + std::to_string(n) + " outside [0, 32]");
  if (static_cast<std::size_t>(n) > bits_left()) throw TruncationError("bitstream ended while reading");
  std::uint32_t value = 0;
  for (int i = 0; i < n; ++i, ++pos_) {
    const std::uint32_t bit = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
    value = (value << 1) | bit;
  }
  return value;
}

std::uint32_t BitReader::read_ue() {
  int zeros = 0;
  while (!read_bit()) {
    if (++zeros >= 32) throw CorruptionError("exp-Golomb prefix of 32 or more zeros");
  }
  const std::uint64_t b = (std::uint64_t{1} << zeros) | read_bits(zeros);
  if (b - 1 >= 0x7fffffffu) throw CorruptionError("exp-Golomb value out of range");
  return static_cast<std::uint32_t>(b - 1);
}

std::int32_t BitReader::read_se() {
  const std::uint32_t m = read_ue();
  if (m & 1u) return static_cast<std::int32_t>((m + 1) / 2);
  return -static_cast<std::int32_t>(m / 2);
}

bool BitReader::at_aligned_end() const {
  if (bits_left() >= 8) return false;
  for (std::size_t p = pos_; p < bytes_.size() * 8; ++p) {
    if ((bytes_[p / 8] >> (7 - p % 8)) & 1u) return false;
  }
  return true;
}

}  // namespace ndvc
