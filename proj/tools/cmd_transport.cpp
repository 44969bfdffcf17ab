#include <atomic>
#include <chrono>
#include <csignal>
#include <iostream>
#include <thread>

#include "cli_common.hpp"
#include "vigil/common/stats.hpp"
#include "vigil/transport/echo_server.hpp"
#include "vigil/transport/interval_stats.hpp"
#include "vigil/transport/stream_client.hpp"

namespace vigil::cli {

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop.store(true); }

transport::Endpoint endpoint_arg(const std::string& text) {
  try {
    return transport::Endpoint::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

void add_echo_server(CLI::App& app, Runner& run) {
  auto* cmd = app.add_subcommand("echo-server", "Echo every received frame back with server timestamps");
  auto listen = std::make_shared<std::string>();
  cmd->add_option("--listen", *listen, "host:port to bind (port 0 picks one)")->required();
  cmd->callback([&run, listen] {
    run = [listen] {
      const auto ep = endpoint_arg(*listen);
      transport::EchoServer server(ep);
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "listening on " << transport::Endpoint{ep.host, server.port()}.to_string() << std::endl;
      server.start();
      while (!g_stop.load()) std::this_thread::sleep_for(std::chrono::milliseconds(50));
      server.stop();
      std::cerr << "echoed " << server.frames_echoed() << " frames\n";
      return kOk;
    };
  });
}

void add_stream_bench(CLI::App& app, Runner& run) {
  auto* cmd = app.add_subcommand("stream-bench", "Stream frames to an echo server and report inter-arrival times");
  struct Opts {
    std::string endpoint;
    bool loopback = false;
    double fps = 30.0;
    std::uint64_t frames = 500;
    std::string res = "1280x720";
    CommonOptions common;
  };
  auto o = std::make_shared<Opts>();
  auto* ep_opt = cmd->add_option("--endpoint", o->endpoint, "echo server host:port");
  auto* lb_opt = cmd->add_flag("--loopback", o->loopback, "use an in-process echo server on 127.0.0.1");
  ep_opt->excludes(lb_opt);
  cmd->add_option("--fps", o->fps, "send rate")->check(CLI::PositiveNumber);
  cmd->add_option("--frames", o->frames, "frames per resolution")->check(CLI::Range(2ULL, 1ULL << 32));
  cmd->add_option("--res", o->res, "comma-separated WxH list");
  cmd->add_option("--out", o->common.out, "round-trip CSV (suffixed per resolution when several)");
  cmd->add_flag("--json", o->common.json, "print the table as JSON");
  cmd->callback([&run, o] {
    run = [o] {
      if (o->endpoint.empty() && !o->loopback) throw UsageError("stream-bench needs --endpoint or --loopback");
      std::vector<std::pair<std::uint16_t, std::uint16_t>> sizes;
      for (const auto& r : split_list(o->res)) sizes.push_back(parse_resolution(r));
      if (sizes.empty()) throw UsageError("--res is empty");
      const auto ep = o->loopback ? transport::Endpoint{} : endpoint_arg(o->endpoint);

      report::ReportTable table("Time intervals between frames (ms)",
                                {"Resolution", "Frames", "Interval", "Median", "RTT"});
      for (const auto& [w, h] : sizes) {
        transport::StreamConfig cfg;
        cfg.fps = o->fps;
        cfg.n_frames = o->frames;
        cfg.width = w;
        cfg.height = h;
        const auto records = o->loopback ? transport::stream_loopback(cfg) : transport::stream_and_measure(ep, cfg);
        const auto iv = transport::interval_stats(records);
        std::vector<double> rtt;
        for (const auto& r : records) rtt.push_back(static_cast<double>(r.rtt_us) / 1000.0);
        const auto rs = summarize(rtt);
        const std::string label = std::to_string(w) + "x" + std::to_string(h);
        table.add_row({label, std::to_string(records.size()), report::format_mean_std(iv.mean_us / 1000.0, iv.std_us / 1000.0),
                       report::format_fixed(iv.median_us / 1000.0), report::format_mean_std(rs.mean, rs.std)});
        if (!o->common.out.empty()) {
          const auto path = sizes.size() == 1 ? o->common.out : with_suffix(o->common.out, label);
          write_output(path, transport::round_trips_to_csv(records));
        }
      }
      print_table(table, o->common.json);
      return kOk;
    };
  });
}

}  // namespace vigil::cli
