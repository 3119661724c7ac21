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

#include "ndvc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ndvc/deflation.hpp"
#include "ndvc/error.hpp"
#include "ndvc/guided.hpp"

namespace ndvc {

SystemB::SystemB(const Manifest& manifest, Strategy strategy, const StorageT& storage)
    : strategy_(strategy), storage_(storage), points_(manifest.info.ladder) {
  const std::string name(to_string(strategy));
  if (!manifest.has_strategy(strategy)) throw NotFoundError("manifest has no artifacts for strategy " + name);
  const auto r0s = manifest.select("r0");
  if (r0s.empty()) throw NotFoundError("manifest has no R_0");
  r0_.name = r0s.front()->path;
  r0_.header_size = kRepresentationHeaderSize;
  r0_.segments = segment_index(storage_.peek(r0_.name));
  r0_info_ = parse_representation_layout(storage_.peek(r0_.name)).info;

  for (int qp : points_) {
    const ManifestRecord* delivered = nullptr;
    for (const ManifestRecord* r : manifest.select("delivered", name)) {
      if (r->qp == qp) delivered = r;
    }
    if (!delivered && strategy == Strategy::kSimulcast) delivered = &manifest.find("simulcast", "simulcast", qp);
    if (!delivered) throw NotFoundError("manifest has no delivered size for strategy " + name + " at qp " + std::to_string(qp));
    const std::uint64_t payload = delivered->bytes - std::min<std::uint64_t>(delivered->bytes, kRepresentationHeaderSize);
    bitrates_[qp] = bitrate_of(payload, manifest.info.frame_rate, manifest.info.frame_count);

    switch (strategy) {
      case Strategy::kSimulcast: {
        Source s{manifest.find("simulcast", "simulcast", qp).path, kRepresentationHeaderSize, {}};
        s.segments = segment_index(storage_.peek(s.name));
        simulcast_[qp] = std::move(s);
        break;
      }
      case Strategy::kFullTranscode:
        break;
      default: {
        Source s{manifest.cs_for(strategy, qp).path, kControlStreamHeaderSize, {}};
        s.segments = control_segment_index(storage_.peek(s.name));
        if (s.segments.size() != r0_.segments.size()) {
          throw CorruptionError("'" + s.name + "' and R_0 disagree on the segment count");
        }
        cs_[qp] = std::move(s);
        break;
      }
    }
  }
}

bool SystemB::has_point(int qp) const { return bitrates_.count(qp) != 0; }

int SystemB::segment_frames(int segment) const {
  if (segment < 0 || segment >= segment_count()) throw NotFoundError("no segment " + std::to_string(segment));
  return r0_.segments[static_cast<std::size_t>(segment)].frame_count;
}

StreamInfo SystemB::delivered_info(int qp) const {
  if (!has_point(qp)) throw NotFoundError("no representation at qp " + std::to_string(qp));
  StreamInfo info = r0_info_;
  info.qp = qp;
  return info;
}

double SystemB::point_bitrate(int qp) const {
  const auto it = bitrates_.find(qp);
  if (it == bitrates_.end()) throw NotFoundError("no representation at qp " + std::to_string(qp));
  return it->second;
}

Bytes SystemB::read_segment_stream(const Source& src, int segment) const {
  const Segment& seg = src.segments[static_cast<std::size_t>(segment)];
  const Bytes header = storage_.read(src.name, 0, src.header_size);
  const Bytes body = storage_.read(src.name, seg.offset, seg.length);
  return segment_stream(header, seg, body);
}

Bytes SystemB::produce_segment(int qp, int segment) const {
  if (!has_point(qp)) throw NotFoundError("no representation at qp " + std::to_string(qp));
  if (segment < 0 || segment >= segment_count()) throw NotFoundError("no segment " + std::to_string(segment));
  const auto start = std::chrono::steady_clock::now();
  Bytes stream;
  switch (strategy_) {
    case Strategy::kSimulcast: {
      const Source& s = simulcast_.at(qp);
      const Segment& seg = s.segments[static_cast<std::size_t>(segment)];
      stream = storage_.read(s.name, seg.offset, seg.length);
      break;
    }
    case Strategy::kFullTranscode:
      stream = full_transcode(read_segment_stream(r0_, segment), qp);
      break;
    case Strategy::kDeflation:
      stream = inflate(read_segment_stream(r0_, segment), read_segment_stream(cs_.at(qp), segment));
      break;
    default:
      stream = guided_encode(read_segment_stream(r0_, segment), read_segment_stream(cs_.at(qp), segment), qp);
      break;
  }
  if (strategy_ != Strategy::kSimulcast) {
    stream.erase(stream.begin(), stream.begin() + static_cast<std::ptrdiff_t>(kRepresentationHeaderSize));
  }
  busy_ns_ += static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count());
  return stream;
}

Sequence system_c_decode(const StreamInfo& info, ByteView segment) {
  const Representation rep = read_segment(info, segment);
  if (static_cast<int>(rep.frames.size()) != info.frame_count) {
    throw CorruptionError("segment holds " + std::to_string(rep.frames.size()) + " frames, expected " +
                          std::to_string(info.frame_count));
  }
  return decode_representation(rep);
}

// ---- trace ----

std::vector<TraceEvent> parse_trace(std::istream& in) {
  std::vector<TraceEvent> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    TraceEvent e;
    std::string kind;
    std::string extra;
    if (!(fields >> e.time >> e.client >> kind >> e.value) || (fields >> extra)) {
      throw FormatError("trace line " + std::to_string(line_no) + ": expected 'time client kind value'");
    }
    if (kind == "request") {
      e.kind = TraceEvent::Kind::kRequest;
    } else if (kind == "bandwidth") {
      e.kind = TraceEvent::Kind::kBandwidth;
    } else {
      throw FormatError("trace line " + std::to_string(line_no) + ": unknown event kind '" + kind + "'");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<TraceEvent> read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace '" + path.string() + "'");
  return parse_trace(in);
}

void validate_trace(const std::vector<TraceEvent>& trace) {
  std::map<std::string, double> last;
  for (const TraceEvent& e : trace) {
    if (!std::isfinite(e.time) || e.time < 0) throw InvalidArgument("trace time must be finite and non-negative");
    const auto it = last.find(e.client);
    if (it != last.end() && e.time < it->second) {
      throw InvalidArgument("trace times decrease for client '" + e.client + "'");
    }
    last[e.client] = e.time;
    if (e.kind == TraceEvent::Kind::kRequest) {
      if (e.value < 0 || e.value != std::floor(e.value) || e.value > 1e9) {
        throw InvalidArgument("request value must be a segment index");
      }
    } else if (!(e.value > 0) || !std::isfinite(e.value)) {
      throw InvalidArgument("bandwidth must be positive");
    }
  }
}

std::uint64_t fnv1a64(ByteView bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

const ClientSession& SessionReport::client(const std::string& id) const {
  for (const ClientSession& c : clients) {
    if (c.client == id) return c;
  }
  throw NotFoundError("no client '" + id + "' in the session report");
}

SessionReport run_simulation(const std::vector<TraceEvent>& trace, Strategy strategy, const Manifest& manifest,
                             const std::vector<int>& points, const SimulationOptions& options) {
  validate_trace(trace);
  StorageT storage;
  load_storage(storage, manifest);
  const SystemB b(manifest, strategy, storage);

  std::vector<int> ladder = points.empty() ? b.points() : points;
  for (int qp : ladder) {
    if (!b.has_point(qp)) throw NotFoundError("no representation at qp " + std::to_string(qp));
  }
  if (ladder.empty()) throw InvalidArgument("simulation needs at least one ladder point");
  std::stable_sort(ladder.begin(), ladder.end(),
                   [&](int a, int c) { return b.point_bitrate(a) < b.point_bitrate(c); });

  std::vector<const TraceEvent*> order;
  for (const TraceEvent& e : trace) order.push_back(&e);
  std::stable_sort(order.begin(), order.end(), [](auto* x, auto* y) { return x->time < y->time; });

  SessionReport report;
  report.strategy = strategy;
  std::map<std::string, std::optional<double>> bandwidth;
  std::map<std::string, std::size_t> slot;
  for (const TraceEvent& e : trace) {
    if (slot.emplace(e.client, report.clients.size()).second) report.clients.push_back(ClientSession{e.client, 0, {}, 0});
  }

  for (const TraceEvent* e : order) {
    if (e->kind == TraceEvent::Kind::kBandwidth) {
      bandwidth[e->client] = e->value;
      continue;
    }
    const int segment = static_cast<int>(e->value);
    if (segment >= b.segment_count()) throw NotFoundError("no segment " + std::to_string(segment));
    const std::optional<double> bw = bandwidth[e->client];
    int chosen = ladder.front();
    bool stall = true;
    for (int qp : ladder) {
      if (!bw || b.point_bitrate(qp) <= *bw) {
        chosen = qp;
        stall = false;
      }
    }
    Bytes body = b.produce_segment(chosen, segment);
    StreamInfo info = b.delivered_info(chosen);
    info.frame_count = b.segment_frames(segment);
    system_c_decode(info, body);

    ClientSession& c = report.clients[slot.at(e->client)];
    c.interface_u_bytes += body.size();
    c.chosen_qps.push_back(chosen);
    c.stalls += stall ? 1 : 0;
    report.interface_u_bytes += body.size();
    Delivery d{e->client, segment, chosen, body.size(), stall, fnv1a64(body), std::nullopt};
    if (options.keep_bodies) d.body = std::move(body);
    report.deliveries.push_back(std::move(d));
  }
  report.system_b_seconds = b.busy_seconds();
  report.interface_t_read_bytes = storage.read_bytes();
  return report;
}

void write_session_report(const SessionReport& r, std::ostream& out) {
  out << "# ndvc session report v1\n"
      << "# deliveries\n"
      << "client\tsegment\tqp\tbytes\tstall\tfnv1a64\n";
  for (const Delivery& d : r.deliveries) {
    out << d.client << '\t' << d.segment << '\t' << d.qp << '\t' << d.bytes << '\t' << (d.stall ? 1 : 0) << '\t'
        << std::hex << std::setw(16) << std::setfill('0') << d.digest << std::dec << std::setfill(' ') << '\n';
  }
  out << "# clients\n"
      << "client\tinterface_u_bytes\trequests\tstalls\n";
  for (const ClientSession& c : r.clients) {
    out << c.client << '\t' << c.interface_u_bytes << '\t' << c.chosen_qps.size() << '\t' << c.stalls << '\n';
  }
  out << "# totals\n"
      << "key\tvalue\n"
      << "strategy\t" << to_string(r.strategy) << '\n'
      << "interface_u_bytes\t" << r.interface_u_bytes << '\n'
      << "interface_t_read_bytes\t" << r.interface_t_read_bytes << '\n'
      << "system_b_seconds\t" << std::fixed << std::setprecision(6) << r.system_b_seconds << '\n';
}

void write_session_report(const SessionReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot create '" + path.string() + "'");
  write_session_report(report, out);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace ndvc
