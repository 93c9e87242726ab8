#pragma once

#include <filesystem>

#include "evego/image.hpp"

namespace evego {

/// Writes an 8-bit RGB PNG. Output bytes depend only on the pixel data, so
/// repeated runs produce identical files.
void save_png(const std::filesystem::path& path, const RgbImage& image);

}  // namespace evego
