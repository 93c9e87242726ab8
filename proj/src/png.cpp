#include "evego/png.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <vector>

#include "evego/errors.hpp"

namespace evego {

namespace {

void put_u32_be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void write_chunk(std::ofstream& os, const char type[4], const std::uint8_t* data,
                 std::size_t len) {
  std::vector<std::uint8_t> buf;
  put_u32_be(buf, static_cast<std::uint32_t>(len));
  buf.insert(buf.end(), type, type + 4);
  buf.insert(buf.end(), data, data + len);
  std::uint32_t crc = crc32(0L, buf.data() + 4, static_cast<uInt>(len + 4));
  put_u32_be(buf, crc);
  os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

}  // namespace

void save_png(const std::filesystem::path& path, const RgbImage& image) {
  if (image.width <= 0 || image.height <= 0)
    throw usage_error("ShapeMismatch: cannot write an empty image");

  std::ofstream os(path, std::ios::binary);
  if (!os) throw data_error("FileNotFound: cannot open " + path.string() + " for writing");

  static const std::uint8_t kSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  os.write(reinterpret_cast<const char*>(kSignature), 8);

  std::vector<std::uint8_t> ihdr;
  put_u32_be(ihdr, static_cast<std::uint32_t>(image.width));
  put_u32_be(ihdr, static_cast<std::uint32_t>(image.height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(2);  // truecolor
  ihdr.push_back(0);  // deflate
  ihdr.push_back(0);  // adaptive filtering
  ihdr.push_back(0);  // no interlace
  write_chunk(os, "IHDR", ihdr.data(), ihdr.size());

  // Raw scanlines, each prefixed with filter type 0 (none).
  const std::size_t stride = static_cast<std::size_t>(image.width) * 3;
  std::vector<std::uint8_t> raw((stride + 1) * image.height);
  for (int y = 0; y < image.height; ++y) {
    raw[y * (stride + 1)] = 0;
    std::memcpy(raw.data() + y * (stride + 1) + 1, image.rgb.data() + y * stride, stride);
  }

  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> idat(bound);
  if (compress2(idat.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 9) != Z_OK)
    throw numeric_error("EncodeFailure: deflate failed while writing " + path.string());
  write_chunk(os, "IDAT", idat.data(), bound);

  write_chunk(os, "IEND", nullptr, 0);
  if (!os) throw data_error("FileNotFound: write failed for " + path.string());
}

}  // namespace evego
