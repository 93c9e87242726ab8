#include <iostream>
#include <memory>

#include "commands.hpp"
#include "common.hpp"
#include "evego/event_io.hpp"
#include "evego/simulator.hpp"

namespace evego::cli {

namespace {

struct SimulateOpts {
  std::string frames, out;
  double threshold = 0.0;
};

void run_simulate(const SimulateOpts& o) {
  StageTimer total("simulate");
  std::vector<IntensityFrame> frames;
  {
    StageTimer timer("simulate_load_frames");
    frames = load_intensity_frames(o.frames);
    timer.annotate("frames", frames.size());
  }
  EventStream stream({}, 1, 1);
  {
    StageTimer timer("simulate_events");
    stream = simulate_events(frames, SimulatorConfig{o.threshold});
    timer.annotate("events", stream.size());
  }
  save_evt(o.out, stream);
  total.annotate("events", stream.size());
}

}  // namespace

void register_simulate(CLI::App& app) {
  auto opts = std::make_shared<SimulateOpts>();
  CLI::App* cmd = app.add_subcommand(
      "simulate", "generate events from an intensity-frame sequence (brightness threshold model)");
  cmd->add_option("--frames", opts->frames,
                  "manifest file: one '<image> <t_us>' line per frame (.pgm or .f32)")
      ->required();
  cmd->add_option("--threshold", opts->threshold, "contrast threshold C, log-intensity units")
      ->required();
  cmd->add_option("--out", opts->out, "output .evt stream")->required();
  cmd->callback([opts] { run_simulate(*opts); });
}

}  // namespace evego::cli
