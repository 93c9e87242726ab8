#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "evego/events.hpp"
#include "evego/pose.hpp"

namespace evego {

/// Linear-intensity frame with a microsecond timestamp. Values must be
/// strictly positive so the log-brightness model is defined everywhere.
struct IntensityFrame {
  int width = 0;
  int height = 0;
  std::uint64_t t_us = 0;
  std::vector<double> values;  // row-major

  IntensityFrame() = default;
  IntensityFrame(int w, int h, std::uint64_t t, double fill = 1.0)
      : width(w), height(h), t_us(t), values(static_cast<std::size_t>(w) * h, fill) {}

  double& at(int y, int x) { return values[static_cast<std::size_t>(y) * width + x]; }
  double at(int y, int x) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

struct SimulatorConfig {
  double contrast_threshold = 0.0;  // required, log-intensity units, > 0
};

/// Ideal brightness-threshold event model. Per pixel, log intensity is
/// linearly interpolated between consecutive frames and one event fires each
/// time it moves a full threshold away from the reference level, which then
/// steps by that threshold. Timestamps are the interpolated crossing instants
/// floored to whole microseconds, bumped by 1 when a pixel would repeat a
/// timestamp. The returned stream is time-sorted across pixels.
EventStream simulate_events(const std::vector<IntensityFrame>& frames,
                            const SimulatorConfig& cfg);

/// Pose keyframe on a real-valued microsecond axis (fractional timestamps let
/// exact 30 Hz grids exist).
struct TimedPose {
  double t_us = 0.0;
  Pose3D pose;
};

/// Per-coordinate linear resampling of keyframes onto the uniform
/// 1/target_rate grid spanning [first, last]. Grid instants that land on a
/// keyframe return that keyframe exactly.
std::vector<TimedPose> interpolate_poses(const std::vector<TimedPose>& keyframes,
                                         double target_rate_hz);

inline constexpr int kSmplJointCount = 45;

/// Selects the 16 canonical joints out of the 45 SMPL-derived joints.
Pose3D smpl_joint_map(const Eigen::MatrixX3d& smpl_joints);

/// Frame sequence from a manifest of "<filename> <t_us>" lines (paths
/// relative to the manifest). PGM samples v become intensity v + 1 so black
/// pixels stay log-safe; .f32 dense maps are taken as-is and must be > 0.
std::vector<IntensityFrame> load_intensity_frames(const std::filesystem::path& manifest);

}  // namespace evego
