#include "evego/repm.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "evego/errors.hpp"

namespace evego {

namespace {

float sigmoid(double x) { return static_cast<float>(1.0 / (1.0 + std::exp(-x))); }

}  // namespace

DenseMap make_confidence_map(const DenseMap& seg_mask, const DenseMap& feature_map) {
  if (!seg_mask.same_shape(feature_map))
    throw usage_error("ShapeMismatch: segmentation and feature maps differ in size");
  DenseMap out;
  out.width = seg_mask.width;
  out.height = seg_mask.height;
  out.values.resize(seg_mask.values.size());
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = sigmoid(static_cast<double>(seg_mask.values[i]) *
                            static_cast<double>(feature_map.values[i]));
  return out;
}

ConfidenceProvider constant_confidence_provider(float value) {
  return [value](const NetworkInput&) {
    DenseMap m;
    m.width = kConfidenceWidth;
    m.height = kConfidenceHeight;
    m.values.assign(static_cast<std::size_t>(kConfidenceWidth) * kConfidenceHeight, value);
    return m;
  };
}

ConfidenceProvider fixed_confidence_provider(DenseMap seg_mask, DenseMap feature_map) {
  DenseMap conf = make_confidence_map(seg_mask, feature_map);
  return [conf = std::move(conf)](const NetworkInput&) { return conf; };
}

FrameBuffer::FrameBuffer(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0)
    throw usage_error("ShapeMismatch: frame buffer dimensions must be positive");
  reset();
}

void FrameBuffer::reset() {
  sum_.assign(static_cast<std::size_t>(width_) * height_ * 2, 0.0f);
  confidence_.width = kConfidenceWidth;
  confidence_.height = kConfidenceHeight;
  confidence_.values.assign(static_cast<std::size_t>(kConfidenceWidth) * kConfidenceHeight, 0.0f);
}

NetworkInput FrameBuffer::step(const LnesFrame& current, const ConfidenceProvider& provider) {
  if (current.width() != width_ || current.height() != height_)
    throw usage_error("ShapeMismatch: LNES frame does not match buffer dimensions");

  const DenseMap weight = resize_bilinear(confidence_, width_, height_);
  const std::size_t plane = static_cast<std::size_t>(width_) * height_;

  // Weighted carry-over plus the fresh frame, kept at pre-normalization scale.
  for (int c = 0; c < 2; ++c) {
    const float* cur = current.data().data() + c * plane;
    float* sum = sum_.data() + c * plane;
    for (std::size_t i = 0; i < plane; ++i)
      sum[i] = static_cast<float>(static_cast<double>(sum[i]) *
                                      static_cast<double>(weight.values[i]) +
                                  static_cast<double>(cur[i]));
  }

  float max_sum = 0.0f;
  for (float v : sum_) max_sum = std::max(max_sum, v);
  const double scale = std::max(1.0, static_cast<double>(max_sum));

  NetworkInput out;
  out.width = width_;
  out.height = height_;
  out.data.resize(sum_.size());
  for (std::size_t i = 0; i < sum_.size(); ++i)
    out.data[i] = static_cast<float>(2.0 * (static_cast<double>(sum_[i]) / scale) - 1.0);

  DenseMap conf = provider(out);
  if (conf.width != kConfidenceWidth || conf.height != kConfidenceHeight)
    throw usage_error("ShapeMismatch: confidence provider returned wrong map size");
  confidence_ = std::move(conf);
  return out;
}

}  // namespace evego
