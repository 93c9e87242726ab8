#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "commands.hpp"
#include "common.hpp"
#include "evego/event_io.hpp"
#include "evego/lnes.hpp"
#include "evego/png.hpp"

namespace evego::cli {

namespace {

std::string window_name(std::size_t index) {
  std::ostringstream ss;
  ss << "window_" << std::setw(3) << std::setfill('0') << index;
  return ss.str();
}

struct EncodeOpts {
  std::string in, out_dir;
  double window_ms = 33.0;
  double stride_ms = 0.0;  // 0 means non-overlapping
  int width = kLnesWidth, height = kLnesHeight;
};

void run_encode(const EncodeOpts& o) {
  StageTimer total("lnes_encode");
  const EventStream stream = load_evt(o.in);
  const auto window_us = static_cast<std::uint64_t>(o.window_ms * 1000.0);
  const auto stride_us =
      o.stride_ms > 0.0 ? static_cast<std::uint64_t>(o.stride_ms * 1000.0) : window_us;

  const std::vector<EventWindow> windows = window_events(stream, window_us, stride_us);
  std::filesystem::create_directories(o.out_dir);
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const LnesFrame frame = encode_lnes(windows[i], stream.sensor_width(),
                                        stream.sensor_height(), o.width, o.height);
    const std::filesystem::path base = std::filesystem::path(o.out_dir) / window_name(i);
    save_lnes(base.string() + ".lnes", frame);
    save_png(base.string() + ".png", lnes_to_rgb(frame));
  }
  total.annotate("windows", windows.size());
}

struct VizOpts {
  std::string in, out;
};

void run_viz(const VizOpts& o) {
  StageTimer timer("lnes_viz");
  save_png(o.out, lnes_to_rgb(load_lnes(o.in)));
}

struct AugmentOpts {
  std::string foreground, background, mask, out, png;
};

void run_augment(const AugmentOpts& o) {
  StageTimer timer("lnes_augment");
  const LnesFrame fg = load_lnes(o.foreground);
  const LnesFrame bg = load_lnes(o.background);
  const DenseMap mask = load_dense_map(o.mask);
  const LnesFrame result = augment_lnes(fg, bg, mask);
  save_lnes(o.out, result);
  if (!o.png.empty()) save_png(o.png, lnes_to_rgb(result));
}

}  // namespace

void register_lnes(CLI::App& app) {
  CLI::App* lnes = app.add_subcommand("lnes", "encode, visualize and augment LNES frames");
  lnes->require_subcommand(1);

  auto enc = std::make_shared<EncodeOpts>();
  CLI::App* cmd = lnes->add_subcommand("encode", "window a stream and write .lnes + .png");
  cmd->add_option("--in", enc->in, ".evt event file")->required();
  cmd->add_option("--out-dir", enc->out_dir, "output directory")->required();
  cmd->add_option("--window-ms", enc->window_ms, "window length, milliseconds");
  cmd->add_option("--stride-ms", enc->stride_ms,
                  "window stride, milliseconds; defaults to the window length");
  cmd->add_option("--width", enc->width, "LNES width");
  cmd->add_option("--height", enc->height, "LNES height");
  cmd->callback([enc] { run_encode(*enc); });

  auto viz = std::make_shared<VizOpts>();
  cmd = lnes->add_subcommand("viz", "render a .lnes file to PNG");
  cmd->add_option("--in", viz->in, ".lnes file")->required();
  cmd->add_option("--out", viz->out, "output PNG")->required();
  cmd->callback([viz] { run_viz(*viz); });

  auto aug = std::make_shared<AugmentOpts>();
  cmd = lnes->add_subcommand("augment", "composite background events under a foreground frame");
  cmd->add_option("--fg", aug->foreground, "foreground .lnes")->required();
  cmd->add_option("--bg", aug->background, "background .lnes")->required();
  cmd->add_option("--mask", aug->mask, "human-region mask .f32 (values > 0.5 are human)")
      ->required();
  cmd->add_option("--out", aug->out, "output .lnes")->required();
  cmd->add_option("--png", aug->png, "optional PNG visualization");
  cmd->callback([aug] { run_augment(*aug); });
}

}  // namespace evego::cli
