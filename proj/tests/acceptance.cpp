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

// Acceptance run on the standard fixture: 128x128, 64 frames, gop 16,
// R_0 at qp 8, ladder {12, 18, 24, 30}. One PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ndvc/bitio.hpp"
#include "ndvc/container.hpp"
#include "ndvc/deflation.hpp"
#include "ndvc/evaluation.hpp"
#include "ndvc/guided.hpp"
#include "ndvc/pipeline.hpp"
#include "ndvc/server.hpp"
#include "ndvc/transform.hpp"
#include "bd_oracle.hpp"

namespace fs = std::filesystem;
using namespace ndvc;

namespace {

constexpr int kWidth = 128;
constexpr int kHeight = 128;
constexpr int kFrames = 64;
constexpr int kGop = 16;
constexpr int kR0Qp = 8;
const std::vector<int> kLadder = {12, 18, 24, 30};

int g_failures = 0;

void verdict(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("criterion %d: %s  %s  [%s]\n", id, pass ? "PASS" : "FAIL", what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<RateQualityPoint> curve(const Manifest& m, Strategy s) {
  std::vector<RateQualityPoint> out;
  for (int qp : kLadder) {
    const ManifestRecord& d = m.find("delivered", to_string(s), qp);
    out.push_back({bitrate_of(d.bytes, m.info.frame_rate, m.info.frame_count), d.psnr.value()});
  }
  return out;
}

struct Fixture {
  Sequence source;
  Manifest manifest;
  Bytes r0;
};

void criterion1(const Fixture& f) {
  bool pass = true;
  std::string detail;
  for (int qp : kLadder) {
    const Bytes cs = read_file(f.manifest.resolve(f.manifest.cs_for(Strategy::kNdvc1, qp)));
    const Bytes guided = guided_encode(f.r0, cs, qp);
    const Bytes transcoded = full_transcode(f.r0, qp);
    pass = pass && guided == transcoded;
    detail += "qp" + std::to_string(qp) + ":" + (guided == transcoded ? "identical" : "differs") + " ";
  }
  verdict(1, pass, "guided_encode == full_transcode, byte-identical", detail);
}

void criterion2(const Fixture& f) {
  bool pass = true;
  std::string detail;
  const Sequence r0_decoded = decode_representation(read_representation(f.r0));
  for (int qp : kLadder) {
    const Bytes simulcast = write_representation(encode_sequence(f.source, qp, kGop).rep);
    const Bytes cs = write_control_stream(deflate(f.source, r0_decoded, qp, kGop).cs);
    const Bytes inflated = inflate(f.r0, cs);
    const Sequence a = decode_representation(read_representation(inflated));
    const Sequence b = decode_representation(read_representation(simulcast));
    const bool ok = inflated == simulcast && a == b && psnr(f.source, a) == psnr(f.source, b);
    pass = pass && ok;
    detail += "qp" + std::to_string(qp) + ":" + (ok ? "identical" : "differs") + " ";
  }
  verdict(2, pass, "inflate(deflate) == simulcast, bytes and samples", detail);
}

void criterion3(const Fixture& f) {
  const auto t = [&](Strategy s) { return f.manifest.interface_t_bytes(s); };
  const std::uint64_t sim = t(Strategy::kSimulcast), dfl = t(Strategy::kDeflation), n1 = t(Strategy::kNdvc1),
                      n2 = t(Strategy::kNdvc2), n4 = t(Strategy::kNdvc4), ft = t(Strategy::kFullTranscode);
  const bool pass = sim > dfl && dfl > n1 && n1 > n2 && n2 >= n4 && n4 > ft;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "T bytes: simulcast %llu, deflation %llu, 1R/CS %llu, 2R/CS %llu, 4R/CS %llu, transcode %llu",
                static_cast<unsigned long long>(sim), static_cast<unsigned long long>(dfl),
                static_cast<unsigned long long>(n1), static_cast<unsigned long long>(n2),
                static_cast<unsigned long long>(n4), static_cast<unsigned long long>(ft));
  verdict(3, pass, "T(sim) > T(defl) > T(1) > T(2) >= T(4) > T(transcode)", buf);
}

void criterion4(const Fixture& f) {
  bool pass = true;
  std::string detail;
  for (int qp : kLadder) {
    const ManifestRecord& cs = f.manifest.cs_for(Strategy::kNdvc1, qp);
    const ManifestRecord& rk = f.manifest.find("delivered", "full_transcode", qp);
    const ManifestRecord& sim = f.manifest.find("simulcast", "simulcast", qp);
    const double ratio = static_cast<double>(cs.bytes) / static_cast<double>(rk.bytes);
    const double vs_sim = static_cast<double>(cs.bytes) / static_cast<double>(sim.bytes);
    if (qp == 12 || qp == 18) pass = pass && ratio < 0.5;
    detail += "qp" + std::to_string(qp) + " " + fmt("%.3f", ratio) + " (vs simulcast " + fmt("%.3f", vs_sim) + ") ";
  }
  verdict(4, pass, "size(CS_k)/size(R_k) < 0.5 at qp 12 and 18", detail);
}

void criterion5(const Fixture& f) {
  const auto transcode = curve(f.manifest, Strategy::kFullTranscode);
  const double bd2 = round1(bd_rate(transcode, curve(f.manifest, Strategy::kNdvc2)));
  const double bd4 = round1(bd_rate(transcode, curve(f.manifest, Strategy::kNdvc4)));
  const double bd1 = round1(bd_rate(transcode, curve(f.manifest, Strategy::kNdvc1)));
  const bool pass = bd2 >= 0.0 && bd4 >= bd2;
  verdict(5, pass, "BD-rate vs transcoding: 2R/CS >= 0 and 4R/CS >= 2R/CS",
          "1R/CS " + fmt("%.1f%%", bd1) + ", 2R/CS " + fmt("%.1f%%", bd2) + ", 4R/CS " + fmt("%.1f%%", bd4));
}

void criterion6(const Fixture& f) {
  bool pass = true;
  std::string detail;
  for (int qp : kLadder) {
    const double ft = f.manifest.find("delivered", "full_transcode", qp).seconds;
    const double guided = f.manifest.find("delivered", "ndvc_1rcs", qp).seconds;
    const double inflated = f.manifest.find("delivered", "deflation", qp).seconds;
    pass = pass && ft > 0 && guided <= 0.35 * ft && inflated <= 0.35 * ft;
    detail += "qp" + std::to_string(qp) + " guided " + fmt("%.1f%%", 100 * guided / ft) + " inflate " +
              fmt("%.1f%%", 100 * inflated / ft) + "; ";
  }
  verdict(6, pass, "guided and inflate <= 35% of full_transcode wall time", detail);
}

void criterion7(const Fixture& f) {
  // Drift-free loop for R_0 and every simulcast point.
  bool drift_free = true;
  bool round_trip = true;
  for (int qp : std::vector<int>{kR0Qp, 12, 18, 24, 30}) {
    const EncodeResult e = encode_sequence(f.source, qp, kGop);
    drift_free = drift_free && decode_representation(e.rep) == e.recon;
    const Bytes bytes = write_representation(e.rep);
    round_trip = round_trip && write_representation(read_representation(bytes)) == bytes;
    const Bytes cs = write_control_stream(generate_control_stream(e.recon, qp, kGop));
    round_trip = round_trip && write_control_stream(read_control_stream(cs)) == cs;
  }
  const Sequence r0_decoded = decode_representation(read_representation(f.r0));
  const Bytes dcs = write_control_stream(deflate(f.source, r0_decoded, 30, kGop).cs);
  round_trip = round_trip && write_control_stream(read_control_stream(dcs)) == dcs;

  bool golomb = true;
  {
    BitWriter w;
    for (std::uint32_t v = 0; v < (1u << 16); ++v) w.write_ue(v);
    for (std::int32_t v = -(1 << 16) + 1; v < (1 << 16); ++v) w.write_se(v);
    const Bytes bytes = w.take();
    BitReader r(bytes);
    for (std::uint32_t v = 0; v < (1u << 16); ++v) golomb = golomb && r.read_ue() == v;
    for (std::int32_t v = -(1 << 16) + 1; v < (1 << 16); ++v) golomb = golomb && r.read_se() == v;
  }

  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> sample(-255, 255);
  int max_error = 0;
  for (int n = 0; n < 10000; ++n) {
    Block8 x;
    for (auto& v : x) v = sample(rng);
    Block8 c = fwd_transform(x);
    for (auto& v : c) v = dequantize(quantize(v, 1), 1);
    const Block8 y = inv_transform(c);
    for (int i = 0; i < 64; ++i) max_error = std::max(max_error, std::abs(y[i] - x[i]));
  }
  const bool transform_ok = max_error <= 2;
  verdict(7, drift_free && round_trip && golomb && transform_ok, "codec soundness",
          std::string("drift-free ") + (drift_free ? "yes" : "NO") + ", container round trips " +
              (round_trip ? "yes" : "NO") + ", exp-Golomb < 2^16 " + (golomb ? "yes" : "NO") +
              ", transform round-trip max error " + std::to_string(max_error) + " (bound 2)");
}

std::vector<TraceEvent> two_client_trace(const Manifest& m) {
  // Bandwidths sit between ladder rates so the selector switches points.
  const auto rate = [&](int qp) {
    const ManifestRecord& r = m.find("simulcast", "simulcast", qp);
    return bitrate_of(r.bytes, m.info.frame_rate, m.info.frame_count);
  };
  const double between = (rate(18) + rate(12)) / 2;
  std::vector<TraceEvent> t;
  using K = TraceEvent::Kind;
  t.push_back({0.0, "alice", K::kBandwidth, 1e9});
  t.push_back({0.0, "bob", K::kBandwidth, between});
  for (int s = 0; s < 4; ++s) {
    t.push_back({s * 0.64, "alice", K::kRequest, double(s)});
    t.push_back({s * 0.64 + 0.1, "bob", K::kRequest, double(s)});
    if (s == 1) t.push_back({s * 0.64 + 0.2, "alice", K::kBandwidth, 1.0});
  }
  return t;
}

void criterion8(const Fixture& f) {
  const std::vector<TraceEvent> trace = two_client_trace(f.manifest);
  std::map<Strategy, SessionReport> reports;
  bool conserved = true;
  for (Strategy s : {Strategy::kSimulcast, Strategy::kDeflation, Strategy::kNdvc1, Strategy::kFullTranscode}) {
    SessionReport r = run_simulation(trace, s, f.manifest, {}, {true});
    std::uint64_t bodies = 0;
    for (const Delivery& d : r.deliveries) bodies += d.body->size();
    std::uint64_t per_client = 0;
    for (const ClientSession& c : r.clients) per_client += c.interface_u_bytes;
    conserved = conserved && r.interface_u_bytes == bodies && per_client == bodies && r.deliveries.size() == 8;
    reports.emplace(s, std::move(r));
  }
  const auto same = [&](Strategy a, Strategy b) {
    const auto& x = reports.at(a).deliveries;
    const auto& y = reports.at(b).deliveries;
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].qp != y[i].qp || *x[i].body != *y[i].body) return false;
    }
    return true;
  };
  const bool sim_defl = same(Strategy::kSimulcast, Strategy::kDeflation);
  const bool n1_ft = same(Strategy::kNdvc1, Strategy::kFullTranscode);

  // The same requests over the wire protocol.
  bool wire = true;
  std::uint64_t wire_bodies = 0;
  {
    Server server(f.manifest, {});
    std::thread loop([&] { server.run(); });
    {
      Client client("127.0.0.1", server.port());
      for (const Delivery& d : reports.at(Strategy::kDeflation).deliveries) {
        const Client::Response resp = client.request({f.manifest.info.video, d.qp, d.segment, "deflation"});
        wire = wire && resp.status == WireStatus::kOk && resp.body == *d.body;
        wire_bodies += resp.body.size();
      }
    }
    server.stop();
    loop.join();
    wire = wire && server.report().interface_u_bytes == wire_bodies;
  }
  const SessionReport& sim = reports.at(Strategy::kSimulcast);
  verdict(8, conserved && sim_defl && n1_ft && wire, "pipeline conservation and strategy equivalence",
          "U bytes " + std::to_string(sim.interface_u_bytes) + " == sum of bodies: " + (conserved ? "yes" : "NO") +
              "; simulcast==deflation bodies: " + (sim_defl ? "yes" : "NO") + "; 1R/CS==transcode bodies: " +
              (n1_ft ? "yes" : "NO") + "; wire protocol: " + (wire ? "yes" : "NO") + "; T reads simulcast " +
              std::to_string(sim.interface_t_read_bytes) + " vs deflation " +
              std::to_string(reports.at(Strategy::kDeflation).interface_t_read_bytes));
}

void criterion9() {
  std::mt19937_64 rng(9);
  double worst = 0;
  bool pass = true;
  for (int n = 0; n < 20; ++n) {
    const auto [anchor, test] = testing_oracle::random_smooth_pair(rng);
    const double got = bd_rate(anchor, test);
    const double want = testing_oracle::piecewise_linear_bd_rate(anchor, test, 10000);
    worst = std::max(worst, std::abs(got - want));
    pass = pass && std::abs(got - want) <= 0.5;
  }
  const auto [anchor, unused] = testing_oracle::random_smooth_pair(rng);
  const double same = bd_rate(anchor, anchor);
  pass = pass && same == 0.0;
  verdict(9, pass, "bd_rate within 0.5 of the piecewise-linear oracle; identical curves -> 0.0",
          "worst |diff| " + fmt("%.4f", worst) + " points over 20 pairs; identical " + fmt("%.1f", same));
}

}  // namespace

int main() {
  const fs::path work = fs::current_path() / "acceptance_work";
  fs::remove_all(work);
  fs::create_directories(work);

  Fixture f;
  f.source = synth_sequence(kWidth, kHeight, kFrames);
  LadderSpec ladder{kLadder, kR0Qp, 1};
  BuildOptions options;
  options.workdir = work;
  options.gop_len = kGop;
  const auto start = std::chrono::steady_clock::now();
  f.manifest = build_all(f.source, ladder, options);
  f.r0 = read_file(f.manifest.resolve(*f.manifest.select("r0").front()));
  std::printf("fixture built in %.1f s (%s)\n",
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), work.c_str());

  criterion1(f);
  criterion2(f);
  criterion3(f);
  criterion4(f);
  criterion5(f);
  criterion6(f);
  criterion7(f);
  criterion8(f);
  criterion9();

  const CostReport report = compare(f.manifest);
  std::printf("\n");
  render_report(report, std::cout);
  std::printf("\n%d of 9 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
