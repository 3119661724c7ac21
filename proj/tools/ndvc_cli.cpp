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

// ndvc: command-line front end. Each verb delegates to one library operation.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ndvc/container.hpp"
#include "ndvc/deflation.hpp"
#include "ndvc/error.hpp"
#include "ndvc/evaluation.hpp"
#include "ndvc/guided.hpp"
#include "ndvc/media_io.hpp"
#include "ndvc/pipeline.hpp"
#include "ndvc/server.hpp"

namespace fs = std::filesystem;
using namespace ndvc;

namespace {

// Raw, y4m, or synthesized source video.
struct InputSpec {
  std::string raw;
  std::string y4m;
  int width = 0;
  int height = 0;
  int frames = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--in", raw, "raw 8-bit luma file (needs --w --h --frames)");
    cmd->add_option("--y4m", y4m, "Y4M file (mono or 4:2:0)")->excludes(cmd->get_option("--in"));
    cmd->add_option("--w", width, "width in pixels");
    cmd->add_option("--h", height, "height in pixels");
    cmd->add_option("--frames", frames, "frame count");
  }

  Sequence load() const {
    if (!y4m.empty()) return read_y4m(y4m);
    if (width <= 0 || height <= 0 || frames <= 0) {
      throw InvalidArgument(raw.empty() ? "no input: give --y4m, --in with --w --h --frames, or --w --h --frames to synthesize"
                                        : "--in needs positive --w, --h and --frames");
    }
    if (!raw.empty()) return read_raw(raw, width, height, frames);
    return synth_sequence(width, height, frames);
  }
};

bool is_y4m(const fs::path& p) { return p.extension() == ".y4m"; }

void save_video(const Sequence& seq, const fs::path& out) {
  if (is_y4m(out)) {
    write_y4m(seq, out);
  } else {
    write_raw(seq, out);
  }
}

Sequence decode_file(const fs::path& path) { return decode_representation(read_representation(read_file(path))); }

// A PSNR operand: .ndv is decoded, .y4m read, anything else is raw.
Sequence load_operand(const fs::path& path, int w, int h, int frames) {
  if (path.extension() == ".ndv") return decode_file(path);
  if (is_y4m(path)) return read_y4m(path);
  if (w <= 0 || h <= 0 || frames <= 0) throw InvalidArgument("raw operand '" + path.string() + "' needs --w --h --frames");
  return read_raw(path, w, h, frames);
}

Strategy strategy_arg(const std::string& name) {
  const auto s = parse_strategy(name);
  if (!s) throw InvalidArgument("--strategy: unknown strategy '" + name + "'");
  return *s;
}

volatile std::sig_atomic_t g_signal = 0;
extern "C" void on_signal(int sig) { g_signal = sig; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network-distributed video coding toolkit"};
  app.name("ndvc");
  app.require_subcommand(1);
  // --h is the height flag, so help is long-form only.
  app.set_help_flag("--help", "print help and exit");

  InputSpec input;
  std::string out, r0_path, cs_path, manifest_path, trace_path, report_path, tsv_path, workdir, video = "synth";
  std::string strategy_name, host = "127.0.0.1", port_file, a_path, b_path;
  int qp = -1, r0_qp = 8, gop = kDefaultGopLength, jobs = 1, port = 0;
  std::vector<int> qps, reps = {1, 2, 4}, points;
  bool no_timing = false;

  auto* synth = app.add_subcommand("synth", "write a synthetic test sequence");
  synth->add_option("--w", input.width, "width")->required();
  synth->add_option("--h", input.height, "height")->required();
  synth->add_option("--frames", input.frames, "frame count")->required();
  synth->add_option("--out", out, "output (.y4m or raw)")->required();

  auto* encode = app.add_subcommand("encode", "full RD encode of a source sequence");
  input.attach(encode);
  encode->add_option("--qp", qp, "quantization parameter")->required()->check(CLI::Range(0, kMaxQp));
  encode->add_option("--gop", gop, "GOP length")->check(CLI::Range(1, 255));
  encode->add_option("--out", out, "output .ndv")->required();

  auto* decode = app.add_subcommand("decode", "decode a representation");
  decode->add_option("--in", a_path, "input .ndv")->required();
  decode->add_option("--out", out, "output (.y4m or raw)")->required();

  auto* transcode = app.add_subcommand("transcode", "decode R_0 and re-encode with full search");
  transcode->add_option("--r0", r0_path, "R_0 .ndv")->required();
  transcode->add_option("--qp", qp, "target qp")->required()->check(CLI::Range(0, kMaxQp));
  transcode->add_option("--out", out, "output .ndv")->required();

  auto* make_cs = app.add_subcommand("make-cs", "generate a control stream from R_0");
  make_cs->add_option("--r0", r0_path, "R_0 .ndv")->required();
  make_cs->add_option("--qp", qp, "native qp of the control stream")->required()->check(CLI::Range(0, kMaxQp));
  make_cs->add_option("--out", out, "output .ndc")->required();

  auto* guided = app.add_subcommand("guided-encode", "encode R_0 under a control stream's decisions");
  guided->add_option("--r0", r0_path, "R_0 .ndv")->required();
  guided->add_option("--cs", cs_path, "control stream .ndc")->required();
  guided->add_option("--qp", qp, "output qp")->required()->check(CLI::Range(0, kMaxQp));
  guided->add_option("--out", out, "output .ndv")->required();

  auto* deflate_cmd = app.add_subcommand("deflate", "decisions plus delta coefficients for one ladder point");
  input.attach(deflate_cmd);
  deflate_cmd->add_option("--r0", r0_path, "R_0 .ndv")->required();
  deflate_cmd->add_option("--qp", qp, "ladder qp")->required()->check(CLI::Range(0, kMaxQp));
  deflate_cmd->add_option("--out", out, "output .ndc")->required();

  auto* inflate_cmd = app.add_subcommand("inflate", "rebuild the simulcast representation");
  inflate_cmd->add_option("--r0", r0_path, "R_0 .ndv")->required();
  inflate_cmd->add_option("--cs", cs_path, "deflated control stream .ndc")->required();
  inflate_cmd->add_option("--out", out, "output .ndv")->required();

  auto* ladder = app.add_subcommand("ladder", "System A: build every artifact and the manifest");
  input.attach(ladder);
  ladder->add_option("--qps", qps, "ladder qps, ascending")->required()->delimiter(',');
  ladder->add_option("--r0-qp", r0_qp, "qp of R_0");
  ladder->add_option("--gop", gop, "GOP length")->check(CLI::Range(1, 255));
  ladder->add_option("--reps", reps, "representations per control stream groupings")->delimiter(',');
  ladder->add_option("--workdir", workdir, "output directory")->required();
  ladder->add_option("--video", video, "video name recorded in the manifest");
  ladder->add_option("--jobs", jobs, "worker threads for encodes")->check(CLI::Range(1, 256));
  ladder->add_flag("--no-timing", no_timing, "skip System B outputs and timing");

  auto* compare_cmd = app.add_subcommand("compare", "cost report from a manifest");
  compare_cmd->add_option("--manifest", manifest_path, "manifest.tsv or its directory")->required();
  compare_cmd->add_option("--points", points, "ladder qps to include")->delimiter(',');
  compare_cmd->add_option("--tsv", tsv_path, "also write the report as TSV");

  auto* simulate = app.add_subcommand("simulate", "trace-driven streaming session");
  simulate->add_option("--manifest", manifest_path, "manifest.tsv or its directory")->required();
  simulate->add_option("--trace", trace_path, "trace file")->required();
  simulate->add_option("--strategy", strategy_name, "delivery strategy")->required();
  simulate->add_option("--points", points, "ladder qps offered to clients")->delimiter(',');
  simulate->add_option("--report", report_path, "session report output (default stdout)");

  auto* serve = app.add_subcommand("serve", "run System B as a TCP service");
  serve->add_option("--manifest", manifest_path, "manifest.tsv or its directory")->required();
  serve->add_option("--host", host, "listen address");
  serve->add_option("--port", port, "listen port, 0 for ephemeral")->check(CLI::Range(0, 65535));
  serve->add_option("--strategy", strategy_name, "serve only this strategy");
  serve->add_option("--report", report_path, "session report written on shutdown");
  serve->add_option("--port-file", port_file, "write the bound port here once listening");

  auto* psnr_cmd = app.add_subcommand("psnr", "PSNR between two sequences");
  psnr_cmd->add_option("--a", a_path, "first sequence (.ndv, .y4m or raw)")->required();
  psnr_cmd->add_option("--b", b_path, "second sequence (.ndv, .y4m or raw)")->required();
  psnr_cmd->add_option("--w", input.width, "width for raw operands");
  psnr_cmd->add_option("--h", input.height, "height for raw operands");
  psnr_cmd->add_option("--frames", input.frames, "frame count for raw operands");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ndvc: " << e.what() << '\n';
    return 2;
  }

  const auto manifest_file = [&] {
    fs::path p = manifest_path;
    return fs::is_directory(p) ? p / kManifestFileName : p;
  };

  try {
    if (*synth) {
      save_video(synth_sequence(input.width, input.height, input.frames), out);
    } else if (*encode) {
      write_file(out, write_representation(encode_sequence(input.load(), qp, gop).rep));
    } else if (*decode) {
      save_video(decode_file(a_path), out);
    } else if (*transcode) {
      write_file(out, full_transcode(read_file(r0_path), qp));
    } else if (*make_cs) {
      const Representation r0 = read_representation(read_file(r0_path));
      write_file(out, write_control_stream(generate_control_stream(decode_representation(r0), qp, r0.info.gop_len)));
    } else if (*guided) {
      write_file(out, guided_encode(read_file(r0_path), read_file(cs_path), qp));
    } else if (*deflate_cmd) {
      const Representation r0 = read_representation(read_file(r0_path));
      write_file(out, write_control_stream(deflate(input.load(), decode_representation(r0), qp, r0.info.gop_len).cs));
    } else if (*inflate_cmd) {
      write_file(out, inflate(read_file(r0_path), read_file(cs_path)));
    } else if (*ladder) {
      LadderSpec spec{qps, r0_qp, 1};
      spec.validate();
      BuildOptions options;
      options.workdir = workdir;
      options.video = video;
      options.gop_len = gop;
      options.groupings = reps;
      options.jobs = jobs;
      options.measure_system_b = !no_timing;
      const Manifest m = build_all(input.load(), spec, options);
      std::cout << "wrote " << (fs::path(workdir) / kManifestFileName).string() << " (" << m.records.size()
                << " records)\n";
    } else if (*compare_cmd) {
      const CostReport report = compare(read_manifest(manifest_file()), points);
      render_report(report, std::cout);
      if (!tsv_path.empty()) write_report_tsv(report, tsv_path);
    } else if (*simulate) {
      const SessionReport report =
          run_simulation(read_trace(trace_path), strategy_arg(strategy_name), read_manifest(manifest_file()), points);
      if (report_path.empty()) {
        write_session_report(report, std::cout);
      } else {
        write_session_report(report, fs::path(report_path));
      }
    } else if (*serve) {
      ServerOptions options;
      options.host = host;
      options.port = static_cast<std::uint16_t>(port);
      if (!strategy_name.empty()) options.strategy = strategy_arg(strategy_name);
      Server server(read_manifest(manifest_file()), options);
      struct sigaction sa {};
      sa.sa_handler = on_signal;
      sigaction(SIGINT, &sa, nullptr);
      sigaction(SIGTERM, &sa, nullptr);
      std::thread watcher([&] {
        while (!g_signal) std::this_thread::sleep_for(std::chrono::milliseconds(50));
        server.stop();
      });
      if (!port_file.empty()) {
        std::ofstream(port_file) << server.port() << '\n';
      }
      std::cout << "listening on " << host << ':' << server.port() << std::endl;
      server.run();
      g_signal = g_signal ? g_signal : SIGTERM;
      watcher.join();
      if (!report_path.empty()) write_session_report(server.report(), fs::path(report_path));
    } else if (*psnr_cmd) {
      const double db = psnr(load_operand(a_path, input.width, input.height, input.frames),
                             load_operand(b_path, input.width, input.height, input.frames));
      if (std::isinf(db)) {
        std::cout << "inf\n";
      } else {
        std::cout << std::fixed << std::setprecision(4) << db << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "ndvc " << app.get_subcommands().front()->get_name() << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
