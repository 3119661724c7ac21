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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ndvc/container.hpp"
#include "ndvc/evaluation.hpp"
#include "ndvc/storage.hpp"

namespace ndvc {

// Adaptation node for one strategy. Produces delivered segments (the frame
// sections of one GOP, without a stream header) from the objects in StorageT.
// Thread-safe: produce_segment may be called concurrently.
class SystemB {
 public:
  // Throws NotFoundError when the manifest lacks the strategy's artifacts.
  SystemB(const Manifest& manifest, Strategy strategy, const StorageT& storage);

  Strategy strategy() const { return strategy_; }
  const std::vector<int>& points() const { return points_; }
  bool has_point(int qp) const;
  int segment_count() const { return static_cast<int>(r0_.segments.size()); }
  int segment_frames(int segment) const;

  // Header fields of the stream the delivered segments belong to.
  StreamInfo delivered_info(int qp) const;
  // Average bitrate of the delivered stream at qp, from the manifest.
  double point_bitrate(int qp) const;

  // NotFoundError for an unknown point or segment.
  Bytes produce_segment(int qp, int segment) const;

  double busy_seconds() const { return busy_ns_.load() * 1e-9; }

 private:
  struct Source {
    std::string name;
    std::size_t header_size = 0;
    std::vector<Segment> segments;
  };

  Bytes read_segment_stream(const Source& src, int segment) const;

  Strategy strategy_;
  const StorageT& storage_;
  StreamInfo r0_info_;
  std::vector<int> points_;
  std::map<int, double> bitrates_;
  Source r0_;
  std::map<int, Source> simulcast_;  // by qp
  std::map<int, Source> cs_;         // by member qp
  mutable std::atomic<std::uint64_t> busy_ns_{0};
};

// Client decoder: throws unless the segment decodes to `frame_count` frames.
Sequence system_c_decode(const StreamInfo& info, ByteView segment);

// ---- trace-driven simulation ----

struct TraceEvent {
  enum class Kind { kRequest, kBandwidth };
  double time = 0;
  std::string client;
  Kind kind = Kind::kRequest;
  double value = 0;  // segment index or bits/second
};

// One record per line: time, client, kind (request|bandwidth), value;
// separated by tabs or spaces; '#' starts a comment line.
std::vector<TraceEvent> parse_trace(std::istream& in);
std::vector<TraceEvent> read_trace(const std::filesystem::path& path);
// Throws InvalidArgument when a client's times decrease or a value is invalid.
void validate_trace(const std::vector<TraceEvent>& trace);

struct Delivery {
  std::string client;
  int segment = 0;
  int qp = 0;
  std::uint64_t bytes = 0;
  bool stall = false;
  std::uint64_t digest = 0;  // FNV-1a of the body
  std::optional<Bytes> body;
};

struct ClientSession {
  std::string client;
  std::uint64_t interface_u_bytes = 0;
  std::vector<int> chosen_qps;  // one per request, in order
  int stalls = 0;
};

struct SessionReport {
  Strategy strategy = Strategy::kSimulcast;
  std::vector<ClientSession> clients;
  std::vector<Delivery> deliveries;
  double system_b_seconds = 0;
  std::uint64_t interface_t_read_bytes = 0;
  std::uint64_t interface_u_bytes = 0;  // sum over clients

  const ClientSession& client(const std::string& id) const;
};

struct SimulationOptions {
  bool keep_bodies = false;
};

// Selector: highest-rate point whose bitrate fits the client's current
// bandwidth, else the lowest point and a stall. A client with no bandwidth
// event yet is unconstrained. Every delivered segment is decoded by System C.
SessionReport run_simulation(const std::vector<TraceEvent>& trace, Strategy strategy, const Manifest& manifest,
                             const std::vector<int>& points = {}, const SimulationOptions& options = {});

std::uint64_t fnv1a64(ByteView bytes);

void write_session_report(const SessionReport& report, std::ostream& out);
void write_session_report(const SessionReport& report, const std::filesystem::path& path);

}  // namespace ndvc
