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
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ndvc/guided.hpp"
#include "ndvc/media_io.hpp"

namespace ndvc {

// ---- BD-rate ----

struct RateQualityPoint {
  double bitrate = 0;  // bits per second
  double psnr = 0;     // dB
};

// Bits/second of a stream of `bytes` covering `frame_count` frames.
double bitrate_of(std::uint64_t bytes, double frame_rate, int frame_count);

// Bjontegaard delta rate in percent: cubic fits of log10(rate) over PSNR,
// averaged over the overlapping PSNR interval. Throws InvalidArgument with
// fewer than four points per curve or no overlap.
double bd_rate(std::span<const RateQualityPoint> anchor, std::span<const RateQualityPoint> test);

// 100 * (a - b) / b.
double percent_change(double a, double b);
// Exact 100 * (a - b) / b rounded to one decimal, ties away from zero.
double percent_change_exact(std::uint64_t a, std::uint64_t b);
// One decimal, ties away from zero; never returns negative zero.
double round1(double x);
std::string format_percent(double x);

// ---- strategies ----

enum class Strategy { kSimulcast, kDeflation, kNdvc1, kNdvc2, kNdvc4, kFullTranscode };

inline constexpr Strategy kAllStrategies[] = {Strategy::kSimulcast, Strategy::kDeflation, Strategy::kNdvc1,
                                             Strategy::kNdvc2,     Strategy::kNdvc4,     Strategy::kFullTranscode};

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);
// Representations per control stream for the NDVC strategies, 0 otherwise.
int reps_per_cs(Strategy s);
Strategy ndvc_strategy(int reps_per_cs);

// ---- manifest ----

struct ManifestInfo {
  std::string video = "synth";
  int width = 0;
  int height = 0;
  int frame_count = 0;
  double frame_rate = 25.0;
  int gop_len = kDefaultGopLength;
  int r0_qp = 8;
  std::vector<int> ladder;
  std::vector<int> groupings;
};

// kind: source | r0 | simulcast | cs | dcs | delivered
struct ManifestRecord {
  std::string kind;
  std::string strategy = "-";
  int qp = -1;
  int cs_qp = -1;
  std::vector<int> members;
  std::string path;  // relative to the manifest directory
  std::uint64_t bytes = 0;
  std::optional<double> psnr;
  double seconds = 0;  // System A encode time, or System B time for "delivered"
};

struct Manifest {
  std::filesystem::path dir;
  ManifestInfo info;
  std::vector<ManifestRecord> records;

  std::filesystem::path resolve(const ManifestRecord& r) const { return dir / r.path; }

  std::vector<const ManifestRecord*> select(std::string_view kind, std::string_view strategy = {}) const;
  // Throws NotFoundError naming the artifact.
  const ManifestRecord& find(std::string_view kind, std::string_view strategy, int qp) const;
  // Control stream record of an NDVC strategy whose group contains qp.
  const ManifestRecord& cs_for(Strategy s, int qp) const;

  // Files the strategy keeps at Interface T.
  std::vector<const ManifestRecord*> stored_by(Strategy s) const;
  std::uint64_t interface_t_bytes(Strategy s) const;
  bool has_strategy(Strategy s) const;
};

inline constexpr std::string_view kManifestFileName = "manifest.tsv";

void write_manifest(const Manifest& m, const std::filesystem::path& path);
Manifest read_manifest(const std::filesystem::path& path);

struct BuildOptions {
  std::filesystem::path workdir;
  std::string video = "synth";
  int gop_len = kDefaultGopLength;
  std::vector<int> groupings = {1, 2, 4};
  int jobs = 1;                 // worker threads for System A encodes
  bool measure_system_b = true; // produce and time the System B output of every strategy
};

// System A: R_0, simulcast ladder, control streams per grouping, deflated
// control streams; then System B outputs per strategy and point, timed
// single-threaded with one discarded warm-up run per strategy.
Manifest build_all(const Sequence& source, const LadderSpec& ladder, const BuildOptions& options);

// ---- cost report ----

struct StrategyCost {
  Strategy strategy;
  std::uint64_t interface_t_bytes = 0;
  std::vector<std::uint64_t> interface_u_bytes;  // per requested point
  std::vector<double> psnr;                      // per requested point
  double system_b_seconds = 0;
  // Derived, unrounded percentages.
  double t_vs_simulcast = 0;
  double u_vs_simulcast = 0;
  double t_vs_transcode = 0;
  double u_vs_transcode = 0;
  double time_vs_transcode = 0;
};

struct CostReport {
  std::vector<int> points;
  bool u_is_bd_rate = true;  // false when fewer than four points: summed-size ratio
  std::vector<StrategyCost> strategies;

  const StrategyCost& at(Strategy s) const;
};

// Pure function of the manifest; time fields are copied, not re-measured.
CostReport compare(const Manifest& manifest, std::span<const int> points = {});

void render_report(const CostReport& report, std::ostream& out);
void write_report_tsv(const CostReport& report, const std::filesystem::path& path);

}  // namespace ndvc
