#include <iostream>
#include <memory>

#include "commands.hpp"
#include "common.hpp"
#include "evego/event_io.hpp"

namespace evego::cli {

namespace {

EventStream load_any(const std::filesystem::path& path, int width, int height) {
  if (path.extension() == ".csv") {
    if (width <= 0 || height <= 0)
      throw usage_error("InvalidDimensions: CSV input needs --width and --height");
    return load_events_csv(path, width, height);
  }
  return load_evt(path);
}

struct InfoOpts {
  std::string in;
  int width = 0, height = 0;
};

void run_info(const InfoOpts& o) {
  StageTimer timer("events_info");
  const EventStream stream = load_any(o.in, o.width, o.height);
  json out;
  out["events"] = stream.size();
  out["sensor_width"] = stream.sensor_width();
  out["sensor_height"] = stream.sensor_height();
  if (!stream.empty()) {
    out["t_first_us"] = stream.events().front().t;
    out["t_last_us"] = stream.events().back().t;
    std::size_t pos = 0;
    for (const Event& e : stream.events()) pos += e.p > 0;
    out["positive"] = pos;
    out["negative"] = stream.size() - pos;
  }
  std::cout << out.dump(2) << "\n";
  timer.annotate("events", stream.size());
}

struct ConvertOpts {
  std::string in, out;
  int width = 0, height = 0;
};

void run_convert(const ConvertOpts& o) {
  StageTimer timer("events_convert");
  const EventStream stream = load_any(o.in, o.width, o.height);
  const std::filesystem::path out = o.out;
  if (out.extension() == ".csv")
    save_events_csv(out, stream);
  else
    save_evt(out, stream);
  timer.annotate("events", stream.size());
}

struct BandwidthOpts {
  std::string in;
  int width = 0, height = 0;
  std::uint64_t window_us = 16660;
};

void run_bandwidth(const BandwidthOpts& o) {
  StageTimer timer("events_bandwidth");
  const EventStream stream = load_any(o.in, o.width, o.height);
  const BandwidthStats stats = bandwidth_report(stream, o.window_us);
  json out;
  out["window_us"] = o.window_us;
  out["windows"] = stats.window_count;
  out["bytes_per_event"] = stats.bytes_per_event;
  out["mean_events_per_window"] = stats.mean_events_per_window;
  out["mean_bytes_per_window"] = stats.mean_bytes_per_window;
  out["rgb_1080p_bytes"] = stats.rgb_1080p_bytes;
  out["rgb_vga_bytes"] = stats.rgb_vga_bytes;
  out["ratio_1080p"] = stats.ratio_1080p;
  out["ratio_vga"] = stats.ratio_vga;
  std::cout << out.dump(2) << "\n";
}

}  // namespace

void register_events(CLI::App& app) {
  CLI::App* events = app.add_subcommand("events", "inspect and convert event streams");
  events->require_subcommand(1);

  auto info = std::make_shared<InfoOpts>();
  CLI::App* cmd = events->add_subcommand("info", "print stream summary as JSON");
  cmd->add_option("--in", info->in, ".evt or .csv event file")->required();
  cmd->add_option("--width", info->width, "sensor width (CSV input only)");
  cmd->add_option("--height", info->height, "sensor height (CSV input only)");
  cmd->callback([info] { run_info(*info); });

  auto conv = std::make_shared<ConvertOpts>();
  cmd = events->add_subcommand("convert", "convert between .evt and .csv");
  cmd->add_option("--in", conv->in, "input event file")->required();
  cmd->add_option("--out", conv->out, "output event file; format by extension")->required();
  cmd->add_option("--width", conv->width, "sensor width (CSV input only)");
  cmd->add_option("--height", conv->height, "sensor height (CSV input only)");
  cmd->callback([conv] { run_convert(*conv); });

  auto bw = std::make_shared<BandwidthOpts>();
  cmd = events->add_subcommand("bandwidth", "event-vs-RGB transmission accounting");
  cmd->add_option("--in", bw->in, "input event file")->required();
  cmd->add_option("--width", bw->width, "sensor width (CSV input only)");
  cmd->add_option("--height", bw->height, "sensor height (CSV input only)");
  cmd->add_option("--window-us", bw->window_us, "window length in microseconds");
  cmd->callback([bw] { run_bandwidth(*bw); });
}

}  // namespace evego::cli
