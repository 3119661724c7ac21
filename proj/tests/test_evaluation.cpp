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
#include <fstream>
#include <random>
#include <sstream>

#include "bd_oracle.hpp"
#include "ndvc/container.hpp"
#include "ndvc/error.hpp"
#include "ndvc/evaluation.hpp"
#include "test_util.hpp"

using namespace ndvc;
using testing_util::TempDir;

namespace {

std::vector<RateQualityPoint> curve(std::vector<double> rates, std::vector<double> psnrs) {
  std::vector<RateQualityPoint> out;
  for (std::size_t i = 0; i < rates.size(); ++i) out.push_back({rates[i], psnrs[i]});
  return out;
}

struct BuiltLadder {
  TempDir dir{"ladder"};
  Manifest manifest;
};

const BuiltLadder& built() {
  static BuiltLadder* b = [] {
    auto* x = new BuiltLadder;
    BuildOptions opt;
    opt.workdir = x->dir.path();
    opt.gop_len = 4;
    x->manifest = build_all(testing_util::small_clip(), {{12, 18, 24, 30}, 8, 1}, opt);
    return x;
  }();
  return *b;
}

}  // namespace

TEST(Percent, ExactValues) {
  EXPECT_DOUBLE_EQ(percent_change(100, 400), -75.0);
  EXPECT_DOUBLE_EQ(percent_change_exact(100, 400), -75.0);
  EXPECT_DOUBLE_EQ(percent_change_exact(1005, 1000), 0.5);
  EXPECT_DOUBLE_EQ(percent_change_exact(10005, 10000), 0.1);
  EXPECT_DOUBLE_EQ(percent_change_exact(9995, 10000), -0.1);
  EXPECT_DOUBLE_EQ(percent_change_exact(3, 3), 0.0);
  EXPECT_DOUBLE_EQ(round1(0.25), 0.3);
  EXPECT_DOUBLE_EQ(round1(-0.25), -0.3);
  EXPECT_FALSE(std::signbit(round1(-0.04)));
  EXPECT_EQ(format_percent(-75.0), "-75.0");
  EXPECT_EQ(format_percent(-0.01), "0.0");
  EXPECT_EQ(format_percent(12.345), "12.3");
}

TEST(BdRate, IdentityAndScaling) {
  const auto a = curve({1e5, 2e5, 4e5, 8e5}, {30, 33, 36, 39});
  EXPECT_NEAR(bd_rate(a, a), 0.0, 1e-9);
  const auto doubled = curve({2e5, 4e5, 8e5, 16e5}, {30, 33, 36, 39});
  EXPECT_NEAR(bd_rate(a, doubled), 100.0, 1e-6);
  const auto halved = curve({0.5e5, 1e5, 2e5, 4e5}, {30, 33, 36, 39});
  EXPECT_NEAR(bd_rate(a, halved), -50.0, 1e-6);
}

TEST(BdRate, RejectsDegenerateInput) {
  const auto a = curve({1e5, 2e5, 4e5, 8e5}, {30, 33, 36, 39});
  const auto three = curve({1e5, 2e5, 4e5}, {30, 33, 36});
  EXPECT_THROW(bd_rate(a, three), InvalidArgument);
  const auto disjoint = curve({1e5, 2e5, 4e5, 8e5}, {50, 53, 56, 59});
  EXPECT_THROW(bd_rate(a, disjoint), InvalidArgument);
}

TEST(BdRate, AgreesWithPiecewiseLinearOracle) {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 50; ++i) {
    const auto [anchor, test] = testing_oracle::random_smooth_pair(rng);
    const double oracle = testing_oracle::piecewise_linear_bd_rate(anchor, test, 20000);
    EXPECT_NEAR(bd_rate(anchor, test), oracle, 0.5) << i;
  }
}

TEST(Strategies, NamesRoundTrip) {
  for (Strategy s : kAllStrategies) EXPECT_EQ(parse_strategy(to_string(s)), s);
  EXPECT_FALSE(parse_strategy("bogus").has_value());
  EXPECT_EQ(reps_per_cs(Strategy::kNdvc4), 4);
  EXPECT_EQ(reps_per_cs(Strategy::kDeflation), 0);
  EXPECT_EQ(ndvc_strategy(2), Strategy::kNdvc2);
  EXPECT_THROW(ndvc_strategy(3), InvalidArgument);
}

TEST(Manifest, WriteReadRoundTrip) {
  TempDir dir("manifest");
  Manifest m;
  m.info.video = "clip";
  m.info.width = 64;
  m.info.height = 32;
  m.info.frame_count = 9;
  m.info.frame_rate = 29.97;
  m.info.gop_len = 3;
  m.info.ladder = {10, 20};
  m.info.groupings = {1, 2};
  ManifestRecord r;
  r.kind = "cs";
  r.strategy = "ndvc_2rcs";
  r.qp = 20;
  r.cs_qp = 20;
  r.members = {10, 20};
  r.path = "cs2_q10_q20.ndc";
  r.bytes = 1234;
  r.seconds = 0.5;
  m.records.push_back(r);
  r.kind = "delivered";
  r.psnr = std::numeric_limits<double>::infinity();
  m.records.push_back(r);
  write_manifest(m, dir / "manifest.tsv");
  const Manifest back = read_manifest(dir / "manifest.tsv");
  EXPECT_EQ(back.info.video, "clip");
  EXPECT_EQ(back.info.ladder, m.info.ladder);
  EXPECT_EQ(back.info.groupings, m.info.groupings);
  EXPECT_DOUBLE_EQ(back.info.frame_rate, 29.97);
  ASSERT_EQ(back.records.size(), 2u);
  EXPECT_EQ(back.records[0].members, r.members);
  EXPECT_FALSE(back.records[0].psnr.has_value());
  EXPECT_TRUE(std::isinf(*back.records[1].psnr));
  EXPECT_EQ(back.records[1].bytes, 1234u);
}

TEST(Manifest, MalformedInputIsAFormatError) {
  TempDir dir("manifest");
  std::ofstream(dir / "bad.tsv") << "kind\tstrategy\n";
  EXPECT_THROW(read_manifest(dir / "bad.tsv"), FormatError);
  EXPECT_THROW(read_manifest(dir / "missing.tsv"), IoError);
}

TEST(BuildAll, ArtifactsMatchManifest) {
  const Manifest& m = built().manifest;
  EXPECT_EQ(m.select("r0").size(), 1u);
  EXPECT_EQ(m.select("simulcast").size(), 4u);
  EXPECT_EQ(m.select("cs").size(), 7u);  // 4 + 2 + 1 groups
  EXPECT_EQ(m.select("dcs").size(), 4u);
  for (const ManifestRecord& r : m.records) {
    if (r.kind == "source") continue;
    EXPECT_EQ(std::filesystem::file_size(m.resolve(r)), r.bytes) << r.path;
  }
  const Manifest reread = read_manifest(m.dir / kManifestFileName);
  EXPECT_EQ(reread.records.size(), m.records.size());
}

TEST(BuildAll, DeliveredOutputsAgreeAcrossStrategies) {
  const Manifest& m = built().manifest;
  for (int qp : m.info.ladder) {
    const Bytes sim = read_file(m.resolve(m.find("simulcast", "simulcast", qp)));
    EXPECT_EQ(read_file(m.resolve(m.find("delivered", "deflation", qp))), sim) << qp;
    EXPECT_EQ(read_file(m.resolve(m.find("delivered", "ndvc_1rcs", qp))),
              read_file(m.resolve(m.find("delivered", "full_transcode", qp))))
        << qp;
  }
}

TEST(BuildAll, DeterministicApartFromTimes) {
  TempDir dir("ladder2");
  BuildOptions opt;
  opt.workdir = dir.path();
  opt.gop_len = 4;
  opt.jobs = 2;
  opt.measure_system_b = false;
  const Manifest again = build_all(testing_util::small_clip(), {{12, 18, 24, 30}, 8, 1}, opt);
  for (const ManifestRecord& r : again.records) {
    if (r.kind == "delivered") continue;
    const auto& records = built().manifest.records;
    const auto first = std::find_if(records.begin(), records.end(), [&](const ManifestRecord& x) { return x.path == r.path; });
    ASSERT_NE(first, records.end()) << r.path;
    EXPECT_EQ(r.bytes, first->bytes) << r.path;
    EXPECT_EQ(read_file(again.resolve(r)), read_file(built().manifest.resolve(*first))) << r.path;
  }
}

TEST(Compare, StorageFollowsStoredFiles) {
  const Manifest& m = built().manifest;
  const CostReport r = compare(m);
  std::uint64_t sim_total = 0;
  for (const ManifestRecord* rec : m.select("simulcast")) sim_total += rec->bytes;
  EXPECT_EQ(r.at(Strategy::kSimulcast).interface_t_bytes, sim_total);
  const std::uint64_t r0 = m.select("r0").front()->bytes;
  EXPECT_EQ(r.at(Strategy::kFullTranscode).interface_t_bytes, r0);
  std::uint64_t dcs_total = r0;
  for (const ManifestRecord* rec : m.select("dcs")) dcs_total += rec->bytes;
  EXPECT_EQ(r.at(Strategy::kDeflation).interface_t_bytes, dcs_total);
  EXPECT_DOUBLE_EQ(r.at(Strategy::kSimulcast).t_vs_simulcast, 0.0);
  EXPECT_DOUBLE_EQ(r.at(Strategy::kDeflation).u_vs_simulcast, 0.0);
  EXPECT_DOUBLE_EQ(r.at(Strategy::kNdvc1).u_vs_transcode, 0.0);
  EXPECT_TRUE(r.u_is_bd_rate);
}

TEST(Compare, PureFunctionOfManifest) {
  const Manifest& m = built().manifest;
  std::ostringstream a;
  std::ostringstream b;
  render_report(compare(m), a);
  render_report(compare(m), b);
  EXPECT_EQ(a.str(), b.str());
  for (const char* title : {"Simulcast", "Deflation/inflation", "1 R/CS", "Full transcoding"}) {
    EXPECT_NE(a.str().find(title), std::string::npos) << title;
  }
}

TEST(Compare, FewPointsFallBackToSizeRatio) {
  const std::vector<int> pts{18, 30};
  const CostReport r = compare(built().manifest, pts);
  EXPECT_FALSE(r.u_is_bd_rate);
  EXPECT_EQ(r.at(Strategy::kSimulcast).interface_u_bytes.size(), 2u);
}

TEST(Compare, MissingArtifactNamesIt) {
  Manifest m = built().manifest;
  std::erase_if(m.records, [](const ManifestRecord& r) { return r.kind == "delivered" && r.qp == 24; });
  try {
    compare(m);
    FAIL() << "expected NotFoundError";
  } catch (const NotFoundError& e) {
    EXPECT_NE(std::string(e.what()).find("24"), std::string::npos) << e.what();
  }
}

TEST(Compare, TsvHasOneRowPerMetric) {
  TempDir dir("tsv");
  write_report_tsv(compare(built().manifest), dir / "r.tsv");
  std::ifstream in(dir / "r.tsv");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  EXPECT_NE(text.find("row\tsimulcast\tdeflation\tndvc_1rcs"), std::string::npos);
  EXPECT_NE(text.find("\ncost_vs_simulcast_T\t0.0\t"), std::string::npos);
  EXPECT_NE(text.find("\ntime_vs_transcode_B\t"), std::string::npos);
}
