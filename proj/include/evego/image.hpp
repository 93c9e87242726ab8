#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "evego/errors.hpp"

namespace evego {

/// Single-channel float image, row-major. Shared container for segmentation
/// masks, confidence maps, feature maps and heatmap channels.
struct DenseMap {
  int width = 0;
  int height = 0;
  std::vector<float> values;

  DenseMap() = default;
  DenseMap(int w, int h, float fill = 0.0f)
      : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

  float& at(int y, int x) { return values[static_cast<std::size_t>(y) * width + x]; }
  float at(int y, int x) const { return values[static_cast<std::size_t>(y) * width + x]; }
  bool same_shape(const DenseMap& o) const { return width == o.width && height == o.height; }
};

/// Bilinear resample with half-pixel centers. Interpolation uses the
/// a + f*(b-a) form so constant images survive resizing bit-exactly.
DenseMap resize_bilinear(const DenseMap& src, int out_width, int out_height);

/// Interleaved 8-bit RGB image.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel, row-major

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3, 0) {}
};

// Flat float32 container file: u32 width, u32 height (little-endian), then
// width*height float32 values row-major. Also used for masks and feature maps.
DenseMap load_dense_map(const std::filesystem::path& path);
void save_dense_map(const std::filesystem::path& path, const DenseMap& map);

/// 8/16-bit binary or ASCII PGM. Samples are returned as raw values.
DenseMap load_pgm(const std::filesystem::path& path);

}  // namespace evego
