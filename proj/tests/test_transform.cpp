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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "ndvc/codec.hpp"
#include "ndvc/error.hpp"
#include "ndvc/transform.hpp"

using namespace ndvc;

namespace {

// Independent oracle: round-half-away of the scaled DCT-II basis in double precision.
std::int32_t basis_oracle(int i, int j) {
  const double s = i == 0 ? std::sqrt(1.0 / 8) : std::sqrt(2.0 / 8);
  const double v = 64.0 * s * std::cos((2 * j + 1) * i * std::numbers::pi / 16);
  return static_cast<std::int32_t>(v < 0 ? -std::floor(-v + 0.5) : std::floor(v + 0.5));
}

// Naive 64-bit matrix products; transpose_first selects the inverse direction.
Block8 naive_transform(const Block8& x, bool inverse) {
  const TransformMatrix& m = transform_matrix();
  auto a = [&](int r, int c) -> std::int64_t { return inverse ? m[c][r] : m[r][c]; };
  std::array<std::int64_t, 64> t{};
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      std::int64_t acc = 0;
      for (int k = 0; k < 8; ++k) acc += a(r, k) * x[k * 8 + c];
      t[r * 8 + c] = acc;
    }
  }
  Block8 out{};
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      std::int64_t acc = 0;
      for (int k = 0; k < 8; ++k) acc += t[r * 8 + k] * a(c, k);
      out[r * 8 + c] = static_cast<std::int32_t>(floor_div(acc + 2048, 4096));
    }
  }
  return out;
}

Block8 random_block(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  Block8 b{};
  for (auto& v : b) v = d(rng);
  return b;
}

int max_round_trip_error(int lo, int hi, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int worst = 0;
  for (int t = 0; t < trials; ++t) {
    const Block8 x = random_block(rng, lo, hi);
    const Block8 y = inv_transform(fwd_transform(x));
    for (int i = 0; i < 64; ++i) worst = std::max(worst, std::abs(y[i] - x[i]));
  }
  return worst;
}

}  // namespace

TEST(Transform, MatrixMatchesBasisFormula) {
  const TransformMatrix& m = transform_matrix();
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) EXPECT_EQ(m[i][j], basis_oracle(i, j)) << i << "," << j;
  }
  EXPECT_EQ(m[0], (std::array<std::int32_t, 8>{23, 23, 23, 23, 23, 23, 23, 23}));
  EXPECT_EQ(m[1], (std::array<std::int32_t, 8>{31, 27, 18, 6, -6, -18, -27, -31}));
  EXPECT_EQ(m[2], (std::array<std::int32_t, 8>{30, 12, -12, -30, -30, -12, 12, 30}));
}

TEST(Transform, ZeroAndConstantBlocks) {
  EXPECT_EQ(fwd_transform(Block8{}), Block8{});
  EXPECT_EQ(inv_transform(Block8{}), Block8{});
  Block8 flat;
  flat.fill(100);
  const Block8 c = fwd_transform(flat);
  EXPECT_EQ(c[0], 827);
  for (int i = 1; i < 64; ++i) EXPECT_EQ(c[i], 0) << i;
}

TEST(Transform, MatchesNaiveProducts) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 2000; ++t) {
    const Block8 x = random_block(rng, -255, 255);
    ASSERT_EQ(fwd_transform(x), naive_transform(x, false));
    const Block8 c = random_block(rng, -4000, 4000);
    ASSERT_EQ(inv_transform(c), naive_transform(c, true));
  }
}

TEST(Transform, DcOnlyInputReconstructsNearConstant) {
  for (int dc : {-827, -300, 0, 50, 827, 2000}) {
    Block8 c{};
    c[0] = dc;
    const Block8 r = inv_transform(c);
    const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
    EXPECT_LE(*hi - *lo, 1) << dc;
  }
}

// The integer basis rows are not exactly orthonormal (row norms 4232 and 4176
// against 4096), so a full-range round trip carries a small gain error.
TEST(Transform, RoundTripErrorFullRangeRecorded) {
  EXPECT_EQ(max_round_trip_error(-255, 255, 10000, 0x5eed), 18);
}

TEST(Transform, RoundTripErrorSmallResiduals) {
  EXPECT_LE(max_round_trip_error(-16, 16, 10000, 7), 2);
}

TEST(Quantize, RoundsHalfAwayFromZero) {
  EXPECT_EQ(quantize(10, 4), 3);
  EXPECT_EQ(quantize(-10, 4), -3);
  EXPECT_EQ(quantize(9, 4), 2);
  EXPECT_EQ(quantize(-6, 4), -2);
  EXPECT_EQ(quantize(5, 4), 1);
  EXPECT_EQ(quantize(1, 4), 0);
  EXPECT_EQ(quantize(-1, 4), 0);
  EXPECT_EQ(quantize(-37, 1), -37);
  EXPECT_EQ(dequantize(-3, 4), -12);
}

TEST(ZigZag, IsAPermutationWithStandardPrefix) {
  std::set<int> seen(kZigZag.begin(), kZigZag.end());
  EXPECT_EQ(seen.size(), 64u);
  EXPECT_EQ(kZigZag[0], 0);
  EXPECT_EQ(kZigZag[1], 1);
  EXPECT_EQ(kZigZag[2], 8);
  EXPECT_EQ(kZigZag[3], 16);
  EXPECT_EQ(kZigZag[4], 9);
  EXPECT_EQ(kZigZag[5], 2);
  EXPECT_EQ(kZigZag[63], 63);
  std::mt19937_64 rng(3);
  const Block8 b = random_block(rng, -50, 50);
  EXPECT_EQ(from_zigzag(to_zigzag(b)), b);
  EXPECT_EQ(to_zigzag(b)[2], b[8]);
}

TEST(StepTable, MatchesFormula) {
  const std::array<int, 52> expected{1,  1,  1,  1,  2,  2,  2,  2,   3,   3,   3,   4,   4,   4,
                                     5,  6,  6,  7,  8,  9,  10, 11,  13,  14,  16,  18,  20,  23,
                                     25, 29, 32, 36, 40, 45, 51, 57,  64,  72,  81,  91,  102, 114,
                                     128, 144, 161, 181, 203, 228, 256, 287, 323, 362};
  for (int qp = 0; qp <= kMaxQp; ++qp) EXPECT_EQ(step_of_qp(qp), expected[qp]) << qp;
  EXPECT_THROW(step_of_qp(-1), InvalidArgument);
  EXPECT_THROW(step_of_qp(52), InvalidArgument);
}
