#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

#include "evego/image.hpp"
#include "evego/pose.hpp"

namespace evego {

inline constexpr int kHeatmapWidth = 64;
inline constexpr int kHeatmapHeight = 48;

/// One non-negative map per joint, plane-major, peak at most 1. Default size
/// is the network output resolution (64x48), but the container also carries
/// intermediate decoder layers at other resolutions.
struct Heatmaps {
  int width = 0;
  int height = 0;
  std::vector<float> data;  // kNumJoints planes

  Heatmaps() = default;
  Heatmaps(int w, int h)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h * kNumJoints, 0.0f) {}

  float& at(int joint, int y, int x) {
    return data[(static_cast<std::size_t>(joint) * height + y) * width + x];
  }
  float at(int joint, int y, int x) const {
    return data[(static_cast<std::size_t>(joint) * height + y) * width + x];
  }
  bool same_shape(const Heatmaps& o) const { return width == o.width && height == o.height; }

  DenseMap channel(int joint) const;
};

/// Unit-peak Gaussian per visible joint at heatmap scale; invisible joints
/// get an all-zero map. Joint coordinates are (x, y) pixels at 64x48.
Heatmaps gaussian_heatmaps(const Eigen::Matrix<double, kNumJoints, 2>& joints2d,
                           const VisibilityMask& visibility, double sigma = 2.0);

/// Bilinearly upsamples every input to 64x48 and averages. Throws EmptyList
/// when given nothing to average.
Heatmaps average_multiscale_heatmaps(const std::vector<Heatmaps>& maps);

struct ExtractedJoints {
  Eigen::Matrix<double, kNumJoints, 2> pixels;     // argmax per joint, (x, y)
  std::array<float, kNumJoints> confidence;        // peak value per joint
};

/// Per-joint argmax and peak. Ties go to the first flat index (row-major),
/// so an all-zero map decodes to (0,0) with confidence 0.
ExtractedJoints extract_joints_2d(const Heatmaps& maps);

}  // namespace evego
