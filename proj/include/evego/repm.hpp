#pragma once

#include <functional>
#include <vector>

#include "evego/image.hpp"
#include "evego/lnes.hpp"

namespace evego {

// Confidence maps live at the network's heatmap resolution and get upsampled
// to the LNES resolution before weighting the buffer.
inline constexpr int kConfidenceWidth = 64;
inline constexpr int kConfidenceHeight = 48;

/// Elementwise sigmoid(seg_mask * feature_map). Output values are strictly
/// inside (0,1) for finite inputs.
DenseMap make_confidence_map(const DenseMap& seg_mask, const DenseMap& feature_map);

/// Two-channel frame in [-1,1], ready to feed a pose network. Same plane-major
/// layout as LnesFrame (positive plane, then negative plane).
struct NetworkInput {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  float at(int channel, int y, int x) const {
    return data[(static_cast<std::size_t>(channel) * height + y) * width + x];
  }
};

/// Produces a confidence map for the input that was just assembled. Stands in
/// for the learned decoder; a few canned providers ship below.
using ConfidenceProvider = std::function<DenseMap(const NetworkInput&)>;

/// Same confidence everywhere, ignoring the input.
ConfidenceProvider constant_confidence_provider(float value);

/// sigmoid(seg * feature) from fixed maps, ignoring the input. Used to drive
/// the buffer from ground-truth segmentation during testing.
ConfidenceProvider fixed_confidence_provider(DenseMap seg_mask, DenseMap feature_map);

/// Recurrent frame buffer: carries the previous combined frame forward,
/// weighted per pixel by the previous confidence map, and adds the new LNES
/// frame on top. Zero-initialized; steps must run in frame order.
class FrameBuffer {
 public:
  FrameBuffer(int width = kLnesWidth, int height = kLnesHeight);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  /// One buffer update:
  ///   sum      = prev_sum * upsample(prev_confidence) + current   (per pixel)
  ///   output   = 2 * (sum / M) - 1,  M = max(1, max over sum)
  ///   prev_confidence <- provider(output); prev_sum <- sum
  /// The stored sum stays at pre-normalization scale.
  NetworkInput step(const LnesFrame& current, const ConfidenceProvider& provider);

  /// Pre-normalization sum planes from the last step (zeros before any step).
  const std::vector<float>& stored_sum() const noexcept { return sum_; }
  /// Confidence map produced for the last output (zeros before any step).
  const DenseMap& stored_confidence() const noexcept { return confidence_; }

  void reset();

 private:
  int width_;
  int height_;
  std::vector<float> sum_;    // plane-major, like LnesFrame
  DenseMap confidence_;       // kConfidenceWidth x kConfidenceHeight
};

}  // namespace evego
