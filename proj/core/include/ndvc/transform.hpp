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
#include <cstdint>

namespace ndvc {

// 8x8 block of integers in raster order.
using Block8 = std::array<std::int32_t, 64>;

// Integer DCT-II basis scaled by 64: round-half-away(64 * s_i * cos((2j+1) i pi / 16)).
using TransformMatrix = std::array<std::array<std::int32_t, 8>, 8>;
const TransformMatrix& transform_matrix();

// C = floor((M X M^T + 2048) / 4096), raster order in and out.
Block8 fwd_transform(const Block8& residual);
// R = floor((M^T C M + 2048) / 4096).
Block8 inv_transform(const Block8& coeffs);

// kZigZag[k] is the raster index of the k-th coefficient in zig-zag scan order.
extern const std::array<std::uint8_t, 64> kZigZag;

Block8 to_zigzag(const Block8& raster);
Block8 from_zigzag(const Block8& scan);

constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  const std::int64_t q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

// Round to nearest, ties away from zero.
constexpr std::int32_t quantize(std::int32_t c, std::int32_t step) {
  const std::int64_t mag = c < 0 ? -std::int64_t{c} : std::int64_t{c};
  const auto level = static_cast<std::int32_t>((2 * mag + step) / (2 * std::int64_t{step}));
  return c < 0 ? -level : level;
}

constexpr std::int32_t dequantize(std::int32_t level, std::int32_t step) { return level * step; }

}  // namespace ndvc
