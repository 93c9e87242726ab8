#pragma once

#include <filesystem>
#include <vector>

#include "evego/events.hpp"
#include "evego/image.hpp"

namespace evego {

/// Locally Normalised Event Surface: two channels (positive, negative
/// polarity) of values in [0,1]. A value v at a pixel means the most recent
/// matching-polarity event in the window fired at t_start + v * T; later
/// events overwrite earlier ones. 0 is both "no event" and "event at exactly
/// t_start" — the encoding does not disambiguate.
class LnesFrame {
 public:
  LnesFrame() = default;
  LnesFrame(int width, int height)
      : width_(width), height_(height), data_(static_cast<std::size_t>(width) * height * 2, 0.0f) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  /// channel 0 = positive polarity, 1 = negative polarity
  float& at(int channel, int y, int x) { return data_[index(channel, y, x)]; }
  float at(int channel, int y, int x) const { return data_[index(channel, y, x)]; }

  const std::vector<float>& data() const noexcept { return data_; }
  std::vector<float>& data() noexcept { return data_; }

  /// One polarity plane viewed as a DenseMap (copies).
  DenseMap channel(int c) const;

  bool same_shape(const LnesFrame& o) const { return width_ == o.width_ && height_ == o.height_; }

 private:
  std::size_t index(int channel, int y, int x) const {
    return (static_cast<std::size_t>(channel) * height_ + y) * width_ + x;
  }
  int width_ = 0;
  int height_ = 0;
  std::vector<float> data_;  // plane-major: positive plane then negative plane
};

inline constexpr int kLnesWidth = 256;
inline constexpr int kLnesHeight = 192;

/// Encodes a window into an LNES frame. Each event writes (t - t_start) / T
/// into its polarity channel; later events at the same (pixel, polarity)
/// overwrite earlier ones. Sensor coordinates map to output pixels by the
/// exact rational factor out/sensor with integer division. Events outside
/// [t_start, t_start + T] are ignored.
LnesFrame encode_lnes(const EventWindow& window, int sensor_width, int sensor_height,
                      int out_width = kLnesWidth, int out_height = kLnesHeight);

/// Positive channel to red, negative to blue, green zero.
/// Byte value = floor(v * 255 + 0.5).
RgbImage lnes_to_rgb(const LnesFrame& frame);

/// Background-event augmentation: zeroes the human region (mask > 0.5) out of
/// the background frame, adds the remainder to the foreground and clamps to
/// [0,1]. All three inputs share dimensions.
LnesFrame augment_lnes(const LnesFrame& foreground, const LnesFrame& background,
                       const DenseMap& human_mask);

// Flat float32 serialization: u32 width, u32 height (little-endian), then the
// positive plane followed by the negative plane.
LnesFrame load_lnes(const std::filesystem::path& path);
void save_lnes(const std::filesystem::path& path, const LnesFrame& frame);

}  // namespace evego
