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

#include <vector>

#include "ndvc/codec.hpp"

namespace ndvc::detail {

// Modes of every 8x8 cell coded so far; feeds motion vector prediction.
class ModeGrid {
 public:
  ModeGrid(int width, int height)
      : cols_(width / kPartSize), cells_(static_cast<std::size_t>(cols_) * (height / kPartSize)) {}

  // Vector of the cell left of pos if it is inter coded, zero otherwise.
  MotionVector predictor(BlockPosition pos) const {
    const int cx = pos.x / kPartSize - 1;
    if (cx < 0) return {};
    const PredMode& left = cells_[static_cast<std::size_t>(pos.y / kPartSize) * cols_ + cx];
    return left.is_inter() ? left.mv : MotionVector{};
  }

  void set(BlockPosition pos, int size, const PredMode& mode) {
    for (int cy = pos.y / kPartSize; cy < (pos.y + size) / kPartSize; ++cy) {
      for (int cx = pos.x / kPartSize; cx < (pos.x + size) / kPartSize; ++cx) {
        cells_[static_cast<std::size_t>(cy) * cols_ + cx] = mode;
      }
    }
  }

 private:
  int cols_;
  std::vector<PredMode> cells_;
};

inline BlockPosition quadrant_position(BlockPosition mb, int quadrant) {
  return {mb.x + (quadrant % 2) * kPartSize, mb.y + (quadrant / 2) * kPartSize};
}

inline BlockPosition macroblock_position(int width, std::size_t mb_index) {
  const int cols = width / kMacroblockSize;
  return {static_cast<int>(mb_index % cols) * kMacroblockSize, static_cast<int>(mb_index / cols) * kMacroblockSize};
}

}  // namespace ndvc::detail
