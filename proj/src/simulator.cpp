#include "evego/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "evego/errors.hpp"
#include "evego/image.hpp"

namespace evego {

EventStream simulate_events(const std::vector<IntensityFrame>& frames,
                            const SimulatorConfig& cfg) {
  if (!(cfg.contrast_threshold > 0.0))
    throw usage_error("InvalidThreshold: contrast threshold must be positive");
  if (frames.size() < 2) throw usage_error("TooFewFrames: need at least 2 intensity frames");

  const int w = frames[0].width;
  const int h = frames[0].height;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].width != w || frames[i].height != h)
      throw data_error("ShapeMismatch: intensity frames differ in size");
    if (i > 0 && frames[i].t_us <= frames[i - 1].t_us)
      throw data_error("UnorderedFrames: frame timestamps must strictly increase");
    for (double v : frames[i].values)
      if (!(v > 0.0)) throw data_error("NonPositiveIntensity: intensities must be > 0");
  }

  const double c = cfg.contrast_threshold;
  std::vector<Event> events;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double ref = std::log(frames[0].at(y, x));
      std::uint64_t last_t = 0;
      bool emitted = false;

      for (std::size_t f = 1; f < frames.size(); ++f) {
        const double la = std::log(frames[f - 1].at(y, x));
        const double lb = std::log(frames[f].at(y, x));
        const double ta = static_cast<double>(frames[f - 1].t_us);
        const double tb = static_cast<double>(frames[f].t_us);

        // Walk the segment one threshold at a time. |la - ref| < c holds on
        // entry, so each crossing level lies inside (la, lb].
        while (true) {
          double level;
          std::int8_t pol;
          if (lb - ref >= c) {
            level = ref + c;
            pol = 1;
          } else if (lb - ref <= -c) {
            level = ref - c;
            pol = -1;
          } else {
            break;
          }
          const double u = (level - la) / (lb - la);
          std::uint64_t t = static_cast<std::uint64_t>(ta + u * (tb - ta));
          if (emitted && t <= last_t) t = last_t + 1;
          events.push_back(Event{static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y),
                                 t, pol});
          last_t = t;
          emitted = true;
          ref = level;
        }
      }
    }
  }

  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.t < b.t; });
  return EventStream(std::move(events), w, h, TimestampPolicy::Lenient);
}

std::vector<TimedPose> interpolate_poses(const std::vector<TimedPose>& keyframes,
                                         double target_rate_hz) {
  if (keyframes.size() < 2)
    throw usage_error("TooFewKeyframes: interpolation needs at least 2 keyframes");
  if (!(target_rate_hz > 0.0)) throw usage_error("InvalidRate: target rate must be positive");
  for (std::size_t i = 1; i < keyframes.size(); ++i)
    if (!(keyframes[i].t_us > keyframes[i - 1].t_us))
      throw data_error("UnorderedFrames: keyframe timestamps must strictly increase");

  std::vector<double> times(keyframes.size());
  for (std::size_t i = 0; i < keyframes.size(); ++i) times[i] = keyframes[i].t_us;

  const double step = 1e6 / target_rate_hz;
  const double span = times.back() - times.front();
  const auto count = static_cast<std::size_t>(span / step + 1e-9);

  std::vector<TimedPose> out;
  out.reserve(count + 1);
  for (std::size_t k = 0; k <= count; ++k) {
    // Non-accumulative grid: k * step stays exact wherever step is exact.
    const double t = times.front() + static_cast<double>(k) * step;
    auto seg = static_cast<std::size_t>(
        std::upper_bound(times.begin(), times.end(), t) - times.begin());
    seg = std::clamp<std::size_t>(seg, 1, times.size() - 1) - 1;

    const double u = (t - times[seg]) / (times[seg + 1] - times[seg]);
    TimedPose sample;
    sample.t_us = t;
    if (u <= 0.0)
      sample.pose = keyframes[seg].pose;
    else if (u >= 1.0)
      sample.pose = keyframes[seg + 1].pose;
    else
      sample.pose = keyframes[seg].pose + u * (keyframes[seg + 1].pose - keyframes[seg].pose);
    out.push_back(std::move(sample));
  }
  return out;
}

Pose3D smpl_joint_map(const Eigen::MatrixX3d& smpl_joints) {
  if (smpl_joints.rows() != kSmplJointCount)
    throw usage_error("WrongJointCount: expected " + std::to_string(kSmplJointCount) +
                      " SMPL joints, got " + std::to_string(smpl_joints.rows()));
  // 0-based rows picked for: head, neck, shoulders, elbows, wrists, hips,
  // knees, ankles, feet in the canonical order.
  constexpr std::array<int, kNumJoints> kMap = {15, 12, 17, 19, 21, 16, 18, 20,
                                                2,  5,  8,  11, 1,  4,  7,  10};
  Pose3D pose;
  for (int j = 0; j < kNumJoints; ++j) pose.row(j) = smpl_joints.row(kMap[j]);
  return pose;
}

std::vector<IntensityFrame> load_intensity_frames(const std::filesystem::path& manifest) {
  std::ifstream is(manifest);
  if (!is) throw data_error("FileNotFound: " + manifest.string());
  const std::filesystem::path dir = manifest.parent_path();

  std::vector<IntensityFrame> frames;
  std::string line;
  while (std::getline(is, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string name;
    std::uint64_t t;
    if (!(ss >> name)) continue;
    if (!(ss >> t)) throw data_error("ParseError: manifest line needs '<file> <t_us>'");

    const std::filesystem::path file = dir / name;
    DenseMap map;
    double shift;
    if (file.extension() == ".pgm") {
      map = load_pgm(file);
      shift = 1.0;
    } else {
      map = load_dense_map(file);
      shift = 0.0;
    }
    IntensityFrame frame(map.width, map.height, t);
    for (std::size_t i = 0; i < map.values.size(); ++i)
      frame.values[i] = static_cast<double>(map.values[i]) + shift;
    frames.push_back(std::move(frame));
  }
  if (frames.size() < 2)
    throw data_error("TooFewFrames: manifest lists fewer than 2 usable frames");
  return frames;
}

}  // namespace evego
