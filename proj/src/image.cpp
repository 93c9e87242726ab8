#include "evego/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

namespace evego {

DenseMap resize_bilinear(const DenseMap& src, int out_width, int out_height) {
  if (src.width <= 0 || src.height <= 0)
    throw usage_error("InvalidDimensions: resize source is empty");
  if (out_width <= 0 || out_height <= 0)
    throw usage_error("InvalidDimensions: resize target is empty");
  if (out_width == src.width && out_height == src.height) return src;

  DenseMap dst(out_width, out_height);
  const double sx = static_cast<double>(src.width) / out_width;
  const double sy = static_cast<double>(src.height) / out_height;
  for (int y = 0; y < out_height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, double(src.height - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, src.height - 1);
    const double wy = fy - y0;
    for (int x = 0; x < out_width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, double(src.width - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, src.width - 1);
      const double wx = fx - x0;

      const double a = src.at(y0, x0);
      const double b = src.at(y0, x1);
      const double c = src.at(y1, x0);
      const double d = src.at(y1, x1);
      const double top = a + wx * (b - a);
      const double bot = c + wx * (d - c);
      dst.at(y, x) = static_cast<float>(top + wy * (bot - top));
    }
  }
  return dst;
}

namespace {

void put_u32(std::ofstream& f, std::uint32_t v) {
  std::uint8_t b[4] = {static_cast<std::uint8_t>(v & 0xff), static_cast<std::uint8_t>(v >> 8),
                       static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 24)};
  f.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return p[0] | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
         (std::uint32_t(p[3]) << 24);
}

}  // namespace

DenseMap load_dense_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("FileNotFound: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (bytes.size() < 8)
    throw data_error("TruncatedRecord: " + path.string() + " header missing");
  const std::uint32_t w = get_u32(bytes.data());
  const std::uint32_t h = get_u32(bytes.data() + 4);
  const std::size_t expect = 8 + static_cast<std::size_t>(w) * h * 4;
  if (bytes.size() != expect) {
    throw data_error("TruncatedRecord: " + path.string() + " has " +
                     std::to_string(bytes.size()) + " bytes, expected " + std::to_string(expect));
  }
  DenseMap m(static_cast<int>(w), static_cast<int>(h));
  std::memcpy(m.values.data(), bytes.data() + 8, m.values.size() * 4);
  return m;
}

void save_dense_map(const std::filesystem::path& path, const DenseMap& map) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw data_error("FileNotFound: cannot open " + path.string() + " for writing");
  put_u32(f, static_cast<std::uint32_t>(map.width));
  put_u32(f, static_cast<std::uint32_t>(map.height));
  f.write(reinterpret_cast<const char*>(map.values.data()),
          static_cast<std::streamsize>(map.values.size() * 4));
}

DenseMap load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("FileNotFound: " + path.string());

  auto next_token = [&in, &path]() {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
      if (c == '#') {
        while ((c = in.get()) != EOF && c != '\n') {
        }
        continue;
      }
      if (!std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        break;
      }
    }
    while ((c = in.get()) != EOF && !std::isspace(c)) tok.push_back(static_cast<char>(c));
    if (tok.empty()) throw data_error("ParseError: truncated PGM " + path.string());
    return tok;
  };

  const std::string magic = next_token();
  if (magic != "P5" && magic != "P2") {
    throw data_error("ParseError: " + path.string() + " is not a PGM (P2/P5)");
  }
  const int w = std::stoi(next_token());
  const int h = std::stoi(next_token());
  const int maxval = std::stoi(next_token());
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535) {
    throw data_error("ParseError: bad PGM header in " + path.string());
  }

  DenseMap m(w, h);
  const std::size_t n = m.values.size();
  if (magic == "P2") {
    for (std::size_t i = 0; i < n; ++i) m.values[i] = static_cast<float>(std::stol(next_token()));
    return m;
  }
  const int bytes_per_sample = maxval < 256 ? 1 : 2;
  std::vector<std::uint8_t> raw(n * bytes_per_sample);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
    throw data_error("ParseError: truncated PGM payload in " + path.string());
  }
  for (std::size_t i = 0; i < n; ++i) {
    // 2-byte PGM samples are big-endian
    m.values[i] = bytes_per_sample == 1
                      ? static_cast<float>(raw[i])
                      : static_cast<float>((std::uint32_t(raw[2 * i]) << 8) | raw[2 * i + 1]);
  }
  return m;
}

}  // namespace evego
