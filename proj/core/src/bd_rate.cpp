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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "ndvc/error.hpp"
#include "ndvc/evaluation.hpp"

namespace ndvc {

namespace {

// Least-squares cubic in a centred, scaled abscissa; u = (psnr - shift) / scale.
struct Cubic {
  std::array<long double, 4> coef{};
  long double shift = 0;
  long double scale = 1;

  // Antiderivative with respect to psnr.
  long double integral(long double a, long double b) const {
    const auto prim = [&](long double p) {
      const long double u = (p - shift) / scale;
      long double acc = 0;
      long double pw = u;
      for (int k = 0; k < 4; ++k, pw *= u) acc += coef[k] * pw / (k + 1);
      return acc * scale;
    };
    return prim(b) - prim(a);
  }
};

Cubic fit_log_rate(std::span<const RateQualityPoint> pts) {
  Cubic c;
  long double lo = pts[0].psnr;
  long double hi = pts[0].psnr;
  for (const auto& p : pts) {
    lo = std::min<long double>(lo, p.psnr);
    hi = std::max<long double>(hi, p.psnr);
  }
  c.shift = (lo + hi) / 2;
  c.scale = hi > lo ? (hi - lo) / 2 : 1;

  // Normal equations A^T A x = A^T y with A[i] = (1, u, u^2, u^3).
  std::array<std::array<long double, 5>, 4> m{};
  for (const auto& p : pts) {
    const long double u = (p.psnr - c.shift) / c.scale;
    const long double y = std::log10(static_cast<long double>(p.bitrate));
    std::array<long double, 4> row{1, u, u * u, u * u * u};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) m[i][j] += row[i] * row[j];
      m[i][4] += row[i] * y;
    }
  }
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    }
    if (std::fabs(m[pivot][col]) < 1e-18L) throw InvalidArgument("bd_rate: degenerate curve (repeated PSNR values)");
    std::swap(m[col], m[pivot]);
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const long double f = m[r][col] / m[col][col];
      for (int k = col; k < 5; ++k) m[r][k] -= f * m[col][k];
    }
  }
  for (int i = 0; i < 4; ++i) c.coef[i] = m[i][4] / m[i][i];
  return c;
}

void check_curve(std::span<const RateQualityPoint> pts, const char* which) {
  if (pts.size() < 4) throw InvalidArgument(std::string("bd_rate: ") + which + " curve needs at least 4 points");
  for (const auto& p : pts) {
    if (!(p.bitrate > 0) || !std::isfinite(p.bitrate) || !std::isfinite(p.psnr)) {
      throw InvalidArgument(std::string("bd_rate: ") + which + " curve has a non-finite or non-positive point");
    }
  }
}

}  // namespace

double bitrate_of(std::uint64_t bytes, double frame_rate, int frame_count) {
  if (frame_count <= 0 || !(frame_rate > 0)) throw InvalidArgument("bitrate needs positive frame rate and count");
  return static_cast<double>(bytes) * 8.0 * frame_rate / frame_count;
}

double bd_rate(std::span<const RateQualityPoint> anchor, std::span<const RateQualityPoint> test) {
  check_curve(anchor, "anchor");
  check_curve(test, "test");
  const auto [amin, amax] = std::minmax_element(anchor.begin(), anchor.end(),
                                                [](auto& a, auto& b) { return a.psnr < b.psnr; });
  const auto [tmin, tmax] = std::minmax_element(test.begin(), test.end(),
                                                [](auto& a, auto& b) { return a.psnr < b.psnr; });
  const long double lo = std::max(amin->psnr, tmin->psnr);
  const long double hi = std::min(amax->psnr, tmax->psnr);
  if (!(hi > lo)) throw InvalidArgument("bd_rate: PSNR ranges do not overlap");

  const Cubic fa = fit_log_rate(anchor);
  const Cubic ft = fit_log_rate(test);
  const long double mean_diff = (ft.integral(lo, hi) - fa.integral(lo, hi)) / (hi - lo);
  return static_cast<double>((std::pow(10.0L, mean_diff) - 1) * 100);
}

double percent_change(double a, double b) {
  if (b == 0) throw InvalidArgument("percent_change: zero baseline");
  return 100.0 * (a - b) / b;
}

double percent_change_exact(std::uint64_t a, std::uint64_t b) {
  if (b == 0) throw InvalidArgument("percent_change: zero baseline");
  // tenths of a percent: 1000 (a - b) / b, rounded half away from zero
  const bool negative = a < b;
  const std::uint64_t diff = negative ? b - a : a - b;
  if (diff > (std::uint64_t{1} << 52) || b > (std::uint64_t{1} << 52)) return round1(percent_change(double(a), double(b)));
  const std::uint64_t num = diff * 1000u;
  const std::uint64_t tenths = (2 * num + b) / (2 * b);
  const double value = static_cast<double>(tenths) / 10.0;
  return negative && tenths != 0 ? -value : value;
}

double round1(double x) {
  const double r = std::round(x * 10.0) / 10.0;
  return r == 0 ? 0.0 : r;
}

std::string format_percent(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", round1(x));
  return buf;
}

}  // namespace ndvc
