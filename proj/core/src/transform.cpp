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

#include "ndvc/transform.hpp"

namespace ndvc {

namespace {

constexpr TransformMatrix kMatrix = {{
    {23, 23, 23, 23, 23, 23, 23, 23},
    {31, 27, 18, 6, -6, -18, -27, -31},
    {30, 12, -12, -30, -30, -12, 12, 30},
    {27, -6, -31, -18, 18, 31, 6, -27},
    {23, -23, -23, 23, 23, -23, -23, 23},
    {18, -31, 6, 27, -27, -6, 31, -18},
    {12, -30, 30, -12, -12, 30, -30, 12},
    {6, -18, 27, -31, 31, -27, 18, -6},
}};

}  // namespace

const TransformMatrix& transform_matrix() { return kMatrix; }

Block8 fwd_transform(const Block8& x) {
  // tmp = M X
  std::array<std::int64_t, 64> tmp{};
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      std::int64_t acc = 0;
      for (int k = 0; k < 8; ++k) acc += std::int64_t{kMatrix[i][k]} * x[k * 8 + j];
      tmp[i * 8 + j] = acc;
    }
  }
  Block8 out{};
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      std::int64_t acc = 0;
      for (int k = 0; k < 8; ++k) acc += tmp[i * 8 + k] * kMatrix[j][k];
      out[i * 8 + j] = static_cast<std::int32_t>(floor_div(acc + 2048, 4096));
    }
  }
  return out;
}

Block8 inv_transform(const Block8& c) {
  // tmp = M^T C
  std::array<std::int64_t, 64> tmp{};
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      std::int64_t acc = 0;
      for (int k = 0; k < 8; ++k) acc += std::int64_t{kMatrix[k][i]} * c[k * 8 + j];
      tmp[i * 8 + j] = acc;
    }
  }
  Block8 out{};
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      std::int64_t acc = 0;
      for (int k = 0; k < 8; ++k) acc += tmp[i * 8 + k] * kMatrix[k][j];
      out[i * 8 + j] = static_cast<std::int32_t>(floor_div(acc + 2048, 4096));
    }
  }
  return out;
}

const std::array<std::uint8_t, 64> kZigZag = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63,
};

Block8 to_zigzag(const Block8& raster) {
  Block8 scan{};
  for (int k = 0; k < 64; ++k) scan[k] = raster[kZigZag[k]];
  return scan;
}

Block8 from_zigzag(const Block8& scan) {
  Block8 raster{};
  for (int k = 0; k < 64; ++k) raster[kZigZag[k]] = scan[k];
  return raster;
}

}  // namespace ndvc
