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

#include "ndvc/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "ndvc/container.hpp"
#include "ndvc/deflation.hpp"
#include "ndvc/error.hpp"

namespace ndvc {

namespace fs = std::filesystem;

// ---- strategies ----

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kSimulcast: return "simulcast";
    case Strategy::kDeflation: return "deflation";
    case Strategy::kNdvc1: return "ndvc_1rcs";
    case Strategy::kNdvc2: return "ndvc_2rcs";
    case Strategy::kNdvc4: return "ndvc_4rcs";
    case Strategy::kFullTranscode: return "full_transcode";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

int reps_per_cs(Strategy s) {
  switch (s) {
    case Strategy::kNdvc1: return 1;
    case Strategy::kNdvc2: return 2;
    case Strategy::kNdvc4: return 4;
    default: return 0;
  }
}

Strategy ndvc_strategy(int reps) {
  switch (reps) {
    case 1: return Strategy::kNdvc1;
    case 2: return Strategy::kNdvc2;
    case 4: return Strategy::kNdvc4;
    default: throw InvalidArgument("no NDVC strategy for " + std::to_string(reps) + " representations per CS");
  }
}

// ---- manifest ----

std::vector<const ManifestRecord*> Manifest::select(std::string_view kind, std::string_view strategy) const {
  std::vector<const ManifestRecord*> out;
  for (const ManifestRecord& r : records) {
    if (r.kind == kind && (strategy.empty() || r.strategy == strategy)) out.push_back(&r);
  }
  return out;
}

const ManifestRecord& Manifest::find(std::string_view kind, std::string_view strategy, int qp) const {
  for (const ManifestRecord& r : records) {
    if (r.kind == kind && (strategy.empty() || r.strategy == strategy) && r.qp == qp) return r;
  }
  throw NotFoundError("manifest has no " + std::string(kind) + " artifact for strategy " +
                      (strategy.empty() ? std::string("-") : std::string(strategy)) + " at qp " + std::to_string(qp));
}

const ManifestRecord& Manifest::cs_for(Strategy s, int qp) const {
  const std::string_view name = to_string(s);
  if (s == Strategy::kDeflation) return find("dcs", name, qp);
  for (const ManifestRecord* r : select("cs", name)) {
    if (std::find(r->members.begin(), r->members.end(), qp) != r->members.end()) return *r;
  }
  throw NotFoundError("manifest has no control stream for strategy " + std::string(name) + " at qp " +
                      std::to_string(qp));
}

bool Manifest::has_strategy(Strategy s) const {
  switch (s) {
    case Strategy::kSimulcast: return !select("simulcast").empty();
    case Strategy::kFullTranscode: return !select("r0").empty();
    case Strategy::kDeflation: return !select("dcs").empty();
    default: return !select("cs", to_string(s)).empty();
  }
}

std::vector<const ManifestRecord*> Manifest::stored_by(Strategy s) const {
  std::vector<const ManifestRecord*> out;
  const auto add = [&](std::string_view kind, std::string_view strategy) {
    const auto sel = select(kind, strategy);
    out.insert(out.end(), sel.begin(), sel.end());
  };
  switch (s) {
    case Strategy::kSimulcast: add("simulcast", {}); break;
    case Strategy::kFullTranscode: add("r0", {}); break;
    case Strategy::kDeflation:
      add("r0", {});
      add("dcs", {});
      break;
    default:
      add("r0", {});
      add("cs", to_string(s));
      break;
  }
  return out;
}

std::uint64_t Manifest::interface_t_bytes(Strategy s) const {
  std::uint64_t total = 0;
  for (const ManifestRecord* r : stored_by(s)) total += r->bytes;
  return total;
}

namespace {

constexpr std::string_view kManifestHeader = "kind\tstrategy\tqp\tcs_qp\tmembers\tpath\tbytes\tpsnr\tseconds";

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out.empty() ? "-" : out;
}

std::vector<int> split_ints(const std::string& s) {
  std::vector<int> out;
  if (s == "-" || s.empty()) return out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

std::string fmt_double(double v, int precision) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

double parse_double(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  return std::stod(s);
}

std::string int_or_dash(int v) { return v < 0 ? "-" : std::to_string(v); }

}  // namespace

void write_manifest(const Manifest& m, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot create '" + path.string() + "'");
  out << "# ndvc asset manifest v1\n"
      << "# one record per line; 'param' rows carry the key in 'strategy' and the value in 'path'\n"
      << kManifestHeader << '\n';
  const auto param = [&](const char* key, const std::string& value) {
    out << "param\t" << key << "\t-\t-\t-\t" << value << "\t-\t-\t-\n";
  };
  param("video", m.info.video);
  param("width", std::to_string(m.info.width));
  param("height", std::to_string(m.info.height));
  param("frames", std::to_string(m.info.frame_count));
  param("frame_rate", fmt_double(m.info.frame_rate, 6));
  param("gop", std::to_string(m.info.gop_len));
  param("r0_qp", std::to_string(m.info.r0_qp));
  param("ladder", join_ints(m.info.ladder));
  param("groupings", join_ints(m.info.groupings));
  for (const ManifestRecord& r : m.records) {
    out << r.kind << '\t' << r.strategy << '\t' << int_or_dash(r.qp) << '\t' << int_or_dash(r.cs_qp) << '\t'
        << join_ints(r.members) << '\t' << r.path << '\t' << r.bytes << '\t'
        << (r.psnr ? fmt_double(*r.psnr, 4) : "-") << '\t' << fmt_double(r.seconds, 6) << '\n';
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

Manifest read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
  Manifest m;
  m.dir = path.parent_path();
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kManifestHeader) throw FormatError("manifest header row missing in '" + path.string() + "'");
      header_seen = true;
      continue;
    }
    const auto f = split_tabs(line);
    if (f.size() != 9) throw FormatError("manifest line " + std::to_string(line_no) + " has " + std::to_string(f.size()) + " fields");
    try {
      if (f[0] == "param") {
        const std::string& key = f[1];
        const std::string& value = f[5];
        if (key == "video") m.info.video = value;
        else if (key == "width") m.info.width = std::stoi(value);
        else if (key == "height") m.info.height = std::stoi(value);
        else if (key == "frames") m.info.frame_count = std::stoi(value);
        else if (key == "frame_rate") m.info.frame_rate = std::stod(value);
        else if (key == "gop") m.info.gop_len = std::stoi(value);
        else if (key == "r0_qp") m.info.r0_qp = std::stoi(value);
        else if (key == "ladder") m.info.ladder = split_ints(value);
        else if (key == "groupings") m.info.groupings = split_ints(value);
        continue;
      }
      ManifestRecord r;
      r.kind = f[0];
      r.strategy = f[1];
      r.qp = f[2] == "-" ? -1 : std::stoi(f[2]);
      r.cs_qp = f[3] == "-" ? -1 : std::stoi(f[3]);
      r.members = split_ints(f[4]);
      r.path = f[5];
      r.bytes = std::stoull(f[6]);
      if (f[7] != "-") r.psnr = parse_double(f[7]);
      r.seconds = std::stod(f[8]);
      m.records.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw FormatError("manifest line " + std::to_string(line_no) + " has a malformed field");
    }
  }
  if (!header_seen) throw FormatError("manifest '" + path.string() + "' is empty");
  return m;
}

// ---- build_all ----

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void run_tasks(std::vector<std::function<void()>>& tasks, int jobs) {
  if (jobs <= 1) {
    for (auto& t : tasks) t();
    return;
  }
  std::mutex mu;
  std::size_t next = 0;
  std::exception_ptr failure;
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      while (true) {
        std::size_t i;
        {
          std::lock_guard lock(mu);
          if (next >= tasks.size() || failure) return;
          i = next++;
        }
        try {
          tasks[i]();
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

std::string qp_tag(int qp) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "q%02d", qp);
  return buf;
}

ManifestRecord record(std::string kind, std::string strategy = "-", int qp = -1) {
  ManifestRecord r;
  r.kind = std::move(kind);
  r.strategy = std::move(strategy);
  r.qp = qp;
  return r;
}

void store(const fs::path& dir, ManifestRecord& r, const Bytes& bytes) {
  write_file(dir / r.path, bytes);
  r.bytes = bytes.size();
}

}  // namespace

Manifest build_all(const Sequence& source, const LadderSpec& ladder, const BuildOptions& options) {
  source.validate();
  ladder.validate();
  for (int g : options.groupings) {
    LadderSpec check = ladder;
    check.reps_per_cs = g;
    check.validate();
  }
  if (options.workdir.empty()) throw InvalidArgument("build_all needs a work directory");
  std::error_code ec;
  fs::create_directories(options.workdir / "out", ec);
  if (ec) throw IoError("cannot create '" + (options.workdir / "out").string() + "': " + ec.message());

  Manifest m;
  m.dir = options.workdir;
  m.info = {options.video, source.width(), source.height(), source.frame_count(), source.frame_rate,
            options.gop_len, ladder.r0_qp, ladder.qps, options.groupings};
  const fs::path& dir = options.workdir;

  ManifestRecord src = record("source");
  src.path = "source.raw";
  src.bytes = write_raw(source, dir / src.path);
  m.records.push_back(src);

  ManifestRecord r0 = record("r0");
  r0.qp = ladder.r0_qp;
  r0.path = "r0_" + qp_tag(ladder.r0_qp) + ".ndv";
  auto start = Clock::now();
  const EncodeResult r0_enc = encode_sequence(source, ladder.r0_qp, options.gop_len);
  const Bytes r0_bytes = write_representation(r0_enc.rep);
  r0.seconds = seconds_since(start);
  store(dir, r0, r0_bytes);
  r0.psnr = psnr(source, r0_enc.recon);
  m.records.push_back(r0);
  const Sequence r0_decoded = decode_representation(read_representation(r0_bytes));

  // System A artifacts; each task fills its own record slot.
  std::vector<ManifestRecord> artifacts;
  std::vector<std::function<void()>> tasks;
  for (int qp : ladder.qps) {
    ManifestRecord r = record("simulcast", "simulcast", qp);
    r.path = "simulcast_" + qp_tag(qp) + ".ndv";
    artifacts.push_back(r);
  }
  for (int g : options.groupings) {
    LadderSpec grouped = ladder;
    grouped.reps_per_cs = g;
    for (const CsGroup& group : assign_cs_groups(grouped)) {
      ManifestRecord r = record("cs", std::string(to_string(ndvc_strategy(g))));
      r.cs_qp = group.cs_qp;
      r.members = group.member_qps;
      r.path = "cs" + std::to_string(g) + "_" + qp_tag(group.member_qps.front()) + "_" + qp_tag(group.cs_qp) + ".ndc";
      artifacts.push_back(r);
    }
  }
  for (int qp : ladder.qps) {
    ManifestRecord r = record("dcs", "deflation", qp);
    r.cs_qp = qp;
    r.path = "dcs_" + qp_tag(qp) + ".ndc";
    artifacts.push_back(r);
  }
  for (ManifestRecord& r : artifacts) {
    tasks.push_back([&, rec = &r] {
      const auto t0 = Clock::now();
      Bytes bytes;
      if (rec->kind == "simulcast") {
        const EncodeResult e = encode_sequence(source, rec->qp, options.gop_len);
        bytes = write_representation(e.rep);
        rec->psnr = psnr(source, e.recon);
      } else if (rec->kind == "cs") {
        bytes = write_control_stream(generate_control_stream(r0_decoded, rec->cs_qp, options.gop_len));
      } else {
        bytes = write_control_stream(deflate(source, r0_decoded, rec->qp, options.gop_len).cs);
      }
      rec->seconds = seconds_since(t0);
      store(dir, *rec, bytes);
    });
  }
  run_tasks(tasks, options.jobs);
  m.records.insert(m.records.end(), artifacts.begin(), artifacts.end());

  if (!options.measure_system_b) {
    write_manifest(m, dir / kManifestFileName);
    return m;
  }

  // System B, serialized for timing.
  for (Strategy s : kAllStrategies) {
    if (!m.has_strategy(s)) continue;
    const std::string name(to_string(s));
    if (s == Strategy::kSimulcast) {
      for (int qp : ladder.qps) {
        const ManifestRecord& stored = m.find("simulcast", "simulcast", qp);
        ManifestRecord d = record("delivered", name, qp);
        d.path = stored.path;
        d.bytes = stored.bytes;
        d.psnr = stored.psnr;
        m.records.push_back(d);
      }
      continue;
    }
    std::map<int, Bytes> cs_bytes;
    if (s != Strategy::kFullTranscode) {
      for (int qp : ladder.qps) cs_bytes[qp] = read_file(m.resolve(m.cs_for(s, qp)));
    }
    const auto produce = [&](int qp) -> Bytes {
      switch (s) {
        case Strategy::kFullTranscode: return full_transcode(r0_bytes, qp);
        case Strategy::kDeflation: return inflate(r0_bytes, cs_bytes.at(qp));
        default: return guided_encode(r0_bytes, cs_bytes.at(qp), qp);
      }
    };
    (void)produce(ladder.qps.front());  // warm-up, discarded
    for (int qp : ladder.qps) {
      ManifestRecord d = record("delivered", name, qp);
      if (s != Strategy::kFullTranscode) d.cs_qp = m.cs_for(s, qp).cs_qp;
      const auto t0 = Clock::now();
      const Bytes out = produce(qp);
      d.seconds = seconds_since(t0);
      d.path = "out/" + name + "_" + qp_tag(qp) + ".ndv";
      store(dir, d, out);
      d.psnr = psnr(source, decode_representation(read_representation(out)));
      m.records.push_back(d);
    }
  }
  write_manifest(m, dir / kManifestFileName);
  return m;
}

// ---- compare ----

const StrategyCost& CostReport::at(Strategy s) const {
  for (const StrategyCost& c : strategies) {
    if (c.strategy == s) return c;
  }
  throw NotFoundError("cost report has no column for " + std::string(to_string(s)));
}

CostReport compare(const Manifest& manifest, std::span<const int> points) {
  CostReport report;
  report.points.assign(points.begin(), points.end());
  if (report.points.empty()) report.points = manifest.info.ladder;
  if (report.points.empty()) throw InvalidArgument("compare: no ladder points requested");
  report.u_is_bd_rate = report.points.size() >= 4;

  for (Strategy s : kAllStrategies) {
    const bool required = s == Strategy::kSimulcast || s == Strategy::kFullTranscode;
    if (!manifest.has_strategy(s)) {
      if (required) throw NotFoundError("manifest lacks the " + std::string(to_string(s)) + " strategy");
      continue;
    }
    StrategyCost c;
    c.strategy = s;
    c.interface_t_bytes = manifest.interface_t_bytes(s);
    for (int qp : report.points) {
      const ManifestRecord& d = manifest.find("delivered", to_string(s), qp);
      c.interface_u_bytes.push_back(d.bytes);
      c.psnr.push_back(d.psnr.value_or(std::numeric_limits<double>::quiet_NaN()));
      c.system_b_seconds += d.seconds;
    }
    report.strategies.push_back(std::move(c));
  }

  const auto curve = [&](const StrategyCost& c) {
    std::vector<RateQualityPoint> pts;
    for (std::size_t i = 0; i < c.interface_u_bytes.size(); ++i) {
      pts.push_back({bitrate_of(c.interface_u_bytes[i], manifest.info.frame_rate, manifest.info.frame_count), c.psnr[i]});
    }
    return pts;
  };
  const auto u_cost = [&](const StrategyCost& c, const StrategyCost& base) {
    if (c.interface_u_bytes == base.interface_u_bytes && c.psnr == base.psnr) return 0.0;
    if (report.u_is_bd_rate) return bd_rate(curve(base), curve(c));
    const auto sum = [](const std::vector<std::uint64_t>& v) { return std::accumulate(v.begin(), v.end(), std::uint64_t{0}); };
    return percent_change(static_cast<double>(sum(c.interface_u_bytes)), static_cast<double>(sum(base.interface_u_bytes)));
  };

  const StrategyCost sim = report.at(Strategy::kSimulcast);
  const StrategyCost ft = report.at(Strategy::kFullTranscode);
  for (StrategyCost& c : report.strategies) {
    c.t_vs_simulcast = percent_change(static_cast<double>(c.interface_t_bytes), static_cast<double>(sim.interface_t_bytes));
    c.t_vs_transcode = percent_change(static_cast<double>(c.interface_t_bytes), static_cast<double>(ft.interface_t_bytes));
    c.u_vs_simulcast = u_cost(c, sim);
    c.u_vs_transcode = u_cost(c, ft);
    c.time_vs_transcode = ft.system_b_seconds > 0 ? percent_change(c.system_b_seconds, ft.system_b_seconds) : 0.0;
  }
  return report;
}

namespace {

std::string column_title(Strategy s) {
  switch (s) {
    case Strategy::kSimulcast: return "Simulcast";
    case Strategy::kDeflation: return "Deflation/inflation";
    case Strategy::kNdvc1: return "1 R/CS";
    case Strategy::kNdvc2: return "2 R/CS";
    case Strategy::kNdvc4: return "4 R/CS";
    case Strategy::kFullTranscode: return "Full transcoding";
  }
  return "?";
}

struct Row {
  std::string key;    // machine-readable name
  std::string title;  // human label
  std::vector<std::string> cells;
};

std::vector<Row> report_rows(const CostReport& r) {
  std::vector<Row> rows;
  const auto add = [&](std::string key, std::string title, auto cell) {
    Row row{std::move(key), std::move(title), {}};
    for (const StrategyCost& c : r.strategies) row.cells.push_back(cell(c));
    rows.push_back(std::move(row));
  };
  const std::string u_kind = r.u_is_bd_rate ? "BD-rate" : "size";
  add("cost_vs_simulcast_T", "Cost (%) vs simulcast (T)", [&](auto& c) {
    return format_percent(percent_change_exact(c.interface_t_bytes, r.at(Strategy::kSimulcast).interface_t_bytes));
  });
  add("cost_vs_simulcast_U", "Cost (%) vs simulcast (U, " + u_kind + ")", [](auto& c) { return format_percent(c.u_vs_simulcast); });
  add("cost_vs_transcode_T", "Cost (%) vs full transcoding (T)", [&](auto& c) {
    return format_percent(percent_change_exact(c.interface_t_bytes, r.at(Strategy::kFullTranscode).interface_t_bytes));
  });
  add("cost_vs_transcode_U", "Cost (%) vs full transcoding (U, " + u_kind + ")", [](auto& c) { return format_percent(c.u_vs_transcode); });
  add("time_vs_transcode_B", "Time (%) vs full transcoding (B)", [](auto& c) { return format_percent(c.time_vs_transcode); });
  add("interface_t_bytes", "Interface T bytes", [](auto& c) { return std::to_string(c.interface_t_bytes); });
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const std::string q = std::to_string(r.points[i]);
    add("interface_u_bytes_qp" + q, "Interface U bytes @ qp " + q, [i](auto& c) { return std::to_string(c.interface_u_bytes[i]); });
    add("psnr_db_qp" + q, "PSNR (dB) @ qp " + q, [i](auto& c) { return fmt_double(c.psnr[i], 3); });
  }
  add("system_b_seconds", "System B time (s)", [](auto& c) { return fmt_double(c.system_b_seconds, 4); });
  return rows;
}

}  // namespace

void render_report(const CostReport& r, std::ostream& out) {
  const std::vector<Row> rows = report_rows(r);
  std::size_t label_width = 0;
  for (const Row& row : rows) label_width = std::max(label_width, row.title.size());
  std::vector<std::size_t> widths;
  for (std::size_t c = 0; c < r.strategies.size(); ++c) {
    std::size_t w = column_title(r.strategies[c].strategy).size();
    for (const Row& row : rows) w = std::max(w, row.cells[c].size());
    widths.push_back(w);
  }
  out << std::left << std::setw(static_cast<int>(label_width)) << "";
  for (std::size_t c = 0; c < r.strategies.size(); ++c) {
    out << "  " << std::right << std::setw(static_cast<int>(widths[c])) << column_title(r.strategies[c].strategy);
  }
  out << '\n';
  for (const Row& row : rows) {
    out << std::left << std::setw(static_cast<int>(label_width)) << row.title;
    for (std::size_t c = 0; c < row.cells.size(); ++c) {
      out << "  " << std::right << std::setw(static_cast<int>(widths[c])) << row.cells[c];
    }
    out << '\n';
  }
  out << "\npublished HM 16.15 reference, not reproduced at this scale:\n"
      << "  Cost (%) vs simulcast (T):        0.0  -27.1  -50.5  -64.8  -68.0  -74.6\n"
      << "  Cost (%) vs simulcast (U):        0.0    0.0    8.5   13.9   18.5    8.5\n"
      << "  Cost (%) vs full transcoding (T): 297.1 189.5  96.7   39.6   26.4    0.0\n"
      << "  Cost (%) vs full transcoding (U): -6.4   -6.4   0.0    6.2   10.8    0.0\n"
      << "  Time (%) vs full transcoding (B): -100.0 -99.7 -98.6 -98.3  -98.1    0.0\n";
}

void write_report_tsv(const CostReport& r, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot create '" + path.string() + "'");
  out << "# ndvc cost report v1; percentages rounded to one decimal, ties away from zero\n";
  out << "row";
  for (Strategy s : kAllStrategies) out << '\t' << to_string(s);
  out << '\n';
  for (const Row& row : report_rows(r)) {
    out << row.key;
    for (Strategy s : kAllStrategies) {
      std::string cell = "-";
      for (std::size_t c = 0; c < r.strategies.size(); ++c) {
        if (r.strategies[c].strategy == s) cell = row.cells[c];
      }
      out << '\t' << cell;
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace ndvc
