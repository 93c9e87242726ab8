#include "evego/lnes.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "evego/errors.hpp"

namespace evego {

DenseMap LnesFrame::channel(int c) const {
  DenseMap m;
  m.width = width_;
  m.height = height_;
  m.values.assign(data_.begin() + static_cast<std::ptrdiff_t>(c) * width_ * height_,
                  data_.begin() + static_cast<std::ptrdiff_t>(c + 1) * width_ * height_);
  return m;
}

LnesFrame encode_lnes(const EventWindow& window, int sensor_width, int sensor_height,
                      int out_width, int out_height) {
  if (sensor_width <= 0 || sensor_height <= 0 || out_width <= 0 || out_height <= 0)
    throw usage_error("InvalidDimensions: sensor and output sizes must be positive");
  if (window.duration == 0)
    throw usage_error("InvalidDimensions: window duration must be positive");

  LnesFrame frame(out_width, out_height);

  for (const Event& e : window.events) {
    if (e.t < window.t_start) continue;
    const std::uint64_t dt = e.t - window.t_start;
    if (dt > window.duration) continue;
    const int ox = static_cast<int>(static_cast<std::int64_t>(e.x) * out_width / sensor_width);
    const int oy = static_cast<int>(static_cast<std::int64_t>(e.y) * out_height / sensor_height);
    if (ox < 0 || ox >= out_width || oy < 0 || oy >= out_height) continue;
    const int c = e.p > 0 ? 0 : 1;
    frame.at(c, oy, ox) =
        static_cast<float>(static_cast<double>(dt) / static_cast<double>(window.duration));
  }
  return frame;
}

RgbImage lnes_to_rgb(const LnesFrame& frame) {
  RgbImage img;
  img.width = frame.width();
  img.height = frame.height();
  img.rgb.assign(static_cast<std::size_t>(img.width) * img.height * 3, 0);
  std::size_t i = 0;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      img.rgb[i] = static_cast<std::uint8_t>(std::floor(frame.at(0, y, x) * 255.0f + 0.5f));
      img.rgb[i + 2] = static_cast<std::uint8_t>(std::floor(frame.at(1, y, x) * 255.0f + 0.5f));
      i += 3;
    }
  }
  return img;
}

LnesFrame augment_lnes(const LnesFrame& foreground, const LnesFrame& background,
                       const DenseMap& human_mask) {
  if (!foreground.same_shape(background) || human_mask.width != foreground.width() ||
      human_mask.height != foreground.height())
    throw usage_error("InvalidDimensions: augmentation inputs must share dimensions");

  LnesFrame out(foreground.width(), foreground.height());
  for (int c = 0; c < 2; ++c) {
    for (int y = 0; y < out.height(); ++y) {
      for (int x = 0; x < out.width(); ++x) {
        const float bg = human_mask.at(y, x) > 0.5f ? 0.0f : background.at(c, y, x);
        float v = foreground.at(c, y, x) + bg;
        if (v > 1.0f) v = 1.0f;
        if (v < 0.0f) v = 0.0f;
        out.at(c, y, x) = v;
      }
    }
  }
  return out;
}

namespace {

void put_u32_le(std::ostream& os, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32_le(std::istream& is, const char* what) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4))
    throw data_error(std::string("TruncatedRecord: ") + what);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

LnesFrame load_lnes(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw data_error("FileNotFound: " + path.string());
  const std::uint32_t w = get_u32_le(is, "lnes header");
  const std::uint32_t h = get_u32_le(is, "lnes header");
  if (w == 0 || h == 0 || w > 65535 || h > 65535)
    throw data_error("ParseError: implausible lnes dimensions");
  LnesFrame frame(static_cast<int>(w), static_cast<int>(h));
  is.read(reinterpret_cast<char*>(frame.data().data()),
          static_cast<std::streamsize>(frame.data().size() * sizeof(float)));
  if (!is) throw data_error("TruncatedRecord: lnes payload shorter than header implies");
  return frame;
}

void save_lnes(const std::filesystem::path& path, const LnesFrame& frame) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw data_error("FileNotFound: cannot open " + path.string() + " for writing");
  put_u32_le(os, static_cast<std::uint32_t>(frame.width()));
  put_u32_le(os, static_cast<std::uint32_t>(frame.height()));
  os.write(reinterpret_cast<const char*>(frame.data().data()),
           static_cast<std::streamsize>(frame.data().size() * sizeof(float)));
  if (!os) throw data_error("FileNotFound: write failed for " + path.string());
}

}  // namespace evego
