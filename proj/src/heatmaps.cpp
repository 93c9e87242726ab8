#include "evego/heatmaps.hpp"

#include <cmath>

#include "evego/errors.hpp"

namespace evego {

DenseMap Heatmaps::channel(int joint) const {
  DenseMap m(width, height);
  const std::size_t plane = static_cast<std::size_t>(width) * height;
  std::copy(data.begin() + joint * plane, data.begin() + (joint + 1) * plane, m.values.begin());
  return m;
}

Heatmaps gaussian_heatmaps(const Eigen::Matrix<double, kNumJoints, 2>& joints2d,
                           const VisibilityMask& visibility, double sigma) {
  if (!(sigma > 0.0)) throw usage_error("InvalidSigma: sigma must be positive");
  Heatmaps maps(kHeatmapWidth, kHeatmapHeight);
  const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);
  for (int j = 0; j < kNumJoints; ++j) {
    if (!visibility[j]) continue;
    const double jx = joints2d(j, 0);
    const double jy = joints2d(j, 1);
    for (int y = 0; y < kHeatmapHeight; ++y) {
      for (int x = 0; x < kHeatmapWidth; ++x) {
        const double d2 = (x - jx) * (x - jx) + (y - jy) * (y - jy);
        maps.at(j, y, x) = static_cast<float>(std::exp(-d2 * inv_two_sigma2));
      }
    }
  }
  return maps;
}

Heatmaps average_multiscale_heatmaps(const std::vector<Heatmaps>& maps) {
  if (maps.empty()) throw usage_error("EmptyList: nothing to average");

  Heatmaps out(kHeatmapWidth, kHeatmapHeight);
  std::vector<double> acc(out.data.size(), 0.0);
  for (const Heatmaps& m : maps) {
    for (int j = 0; j < kNumJoints; ++j) {
      const DenseMap up = resize_bilinear(m.channel(j), kHeatmapWidth, kHeatmapHeight);
      const std::size_t base = static_cast<std::size_t>(j) * kHeatmapWidth * kHeatmapHeight;
      for (std::size_t i = 0; i < up.values.size(); ++i) acc[base + i] += up.values[i];
    }
  }
  const double inv_n = 1.0 / static_cast<double>(maps.size());
  for (std::size_t i = 0; i < acc.size(); ++i)
    out.data[i] = static_cast<float>(acc[i] * inv_n);
  return out;
}

ExtractedJoints extract_joints_2d(const Heatmaps& maps) {
  if (maps.width <= 0 || maps.height <= 0)
    throw usage_error("ShapeMismatch: cannot extract joints from empty heatmaps");
  ExtractedJoints out;
  for (int j = 0; j < kNumJoints; ++j) {
    int best_x = 0, best_y = 0;
    float best_v = maps.at(j, 0, 0);
    for (int y = 0; y < maps.height; ++y) {
      for (int x = 0; x < maps.width; ++x) {
        if (maps.at(j, y, x) > best_v) {  // strict: first flat index wins ties
          best_v = maps.at(j, y, x);
          best_x = x;
          best_y = y;
        }
      }
    }
    out.pixels(j, 0) = best_x;
    out.pixels(j, 1) = best_y;
    out.confidence[j] = best_v;
  }
  return out;
}

}  // namespace evego
