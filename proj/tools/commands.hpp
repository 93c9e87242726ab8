#pragma once

#include <CLI11.hpp>

namespace evego::cli {

void register_events(CLI::App& app);
void register_lnes(CLI::App& app);
void register_camera(CLI::App& app);
void register_calib(CLI::App& app);
void register_visibility(CLI::App& app);
void register_eval(CLI::App& app);
void register_simulate(CLI::App& app);
void register_pipeline(CLI::App& app);

}  // namespace evego::cli
