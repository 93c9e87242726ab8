#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "commands.hpp"
#include "common.hpp"
#include "evego/event_io.hpp"
#include "evego/lnes.hpp"
#include "evego/png.hpp"
#include "evego/repm.hpp"

namespace evego::cli {

namespace {

/// NetworkInput container: u32 width, u32 height (little-endian), positive
/// plane then negative plane as float32. Same layout as .lnes, but the values
/// live in [-1,1].
void save_network_input(const std::filesystem::path& path, const NetworkInput& input) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw data_error("FileNotFound: cannot open " + path.string() + " for writing");
  const auto w = static_cast<std::uint32_t>(input.width);
  const auto h = static_cast<std::uint32_t>(input.height);
  const std::uint8_t header[8] = {
      static_cast<std::uint8_t>(w),       static_cast<std::uint8_t>(w >> 8),
      static_cast<std::uint8_t>(w >> 16), static_cast<std::uint8_t>(w >> 24),
      static_cast<std::uint8_t>(h),       static_cast<std::uint8_t>(h >> 8),
      static_cast<std::uint8_t>(h >> 16), static_cast<std::uint8_t>(h >> 24)};
  os.write(reinterpret_cast<const char*>(header), 8);
  os.write(reinterpret_cast<const char*>(input.data.data()),
           static_cast<std::streamsize>(input.data.size() * sizeof(float)));
  if (!os) throw data_error("FileNotFound: write failed for " + path.string());
}

struct PipelineOpts {
  std::string in, out_dir;
  double window_ms = 33.0;
  double stride_ms = 0.0;
  int width = kLnesWidth, height = kLnesHeight;
  double confidence = 0.5;
  std::string seg_dir, feat_dir;
};

void run_pipeline(const PipelineOpts& o) {
  StageTimer total("pipeline");

  EventStream stream({}, 1, 1);
  {
    StageTimer timer("pipeline_read");
    stream = load_evt(o.in);
    timer.annotate("events", stream.size());
  }

  const auto window_us = static_cast<std::uint64_t>(o.window_ms * 1000.0);
  const auto stride_us =
      o.stride_ms > 0.0 ? static_cast<std::uint64_t>(o.stride_ms * 1000.0) : window_us;
  std::vector<EventWindow> windows;
  {
    StageTimer timer("pipeline_window");
    windows = window_events(stream, window_us, stride_us);
    timer.annotate("windows", windows.size());
  }

  // Confidence comes from fixed per-window maps when both directories are
  // given (files named <index>.f32, e.g. 000.f32), else it is constant.
  const bool per_window_maps = !o.seg_dir.empty() && !o.feat_dir.empty();
  const ConfidenceProvider constant = constant_confidence_provider(
      static_cast<float>(o.confidence));

  std::filesystem::create_directories(o.out_dir);
  FrameBuffer buffer(o.width, o.height);
  double encode_ms = 0.0, repm_ms = 0.0;
  for (std::size_t q = 0; q < windows.size(); ++q) {
    std::ostringstream idx;
    idx << std::setw(3) << std::setfill('0') << q;

    LnesFrame frame;
    {
      StageTimer timer("pipeline_encode_window");
      frame = encode_lnes(windows[q], stream.sensor_width(), stream.sensor_height(), o.width,
                          o.height);
      encode_ms += timer.elapsed_ms();
    }

    ConfidenceProvider provider = constant;
    if (per_window_maps) {
      const DenseMap seg = load_dense_map(std::filesystem::path(o.seg_dir) / (idx.str() + ".f32"));
      const DenseMap feat =
          load_dense_map(std::filesystem::path(o.feat_dir) / (idx.str() + ".f32"));
      provider = fixed_confidence_provider(seg, feat);
    }

    NetworkInput input;
    {
      StageTimer timer("pipeline_repm_step");
      input = buffer.step(frame, provider);
      repm_ms += timer.elapsed_ms();
    }

    const std::filesystem::path base = std::filesystem::path(o.out_dir) / ("window_" + idx.str());
    save_lnes(base.string() + ".lnes", frame);
    save_png(base.string() + ".png", lnes_to_rgb(frame));
    save_network_input(std::filesystem::path(o.out_dir) / ("input_" + idx.str() + ".nin"), input);
  }

  total.annotate("windows", windows.size());
  total.annotate("encode_ms_total", encode_ms);
  total.annotate("repm_ms_total", repm_ms);
}

}  // namespace

void register_pipeline(CLI::App& app) {
  auto opts = std::make_shared<PipelineOpts>();
  CLI::App* cmd = app.add_subcommand(
      "pipeline", "events to windows to LNES to recurrent frame buffer, with exports");
  cmd->add_option("--in", opts->in, ".evt event file")->required();
  cmd->add_option("--out-dir", opts->out_dir, "output directory")->required();
  cmd->add_option("--window-ms", opts->window_ms, "window length, milliseconds");
  cmd->add_option("--stride-ms", opts->stride_ms,
                  "window stride, milliseconds; defaults to the window length");
  cmd->add_option("--width", opts->width, "LNES width");
  cmd->add_option("--height", opts->height, "LNES height");
  cmd->add_option("--confidence", opts->confidence,
                  "constant confidence value used when no map directories are given");
  cmd->add_option("--seg-dir", opts->seg_dir, "directory of per-window segmentation maps");
  cmd->add_option("--feat-dir", opts->feat_dir, "directory of per-window feature maps");
  cmd->callback([opts] { run_pipeline(*opts); });
}

}  // namespace evego::cli
