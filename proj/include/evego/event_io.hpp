#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "evego/events.hpp"

namespace evego {

// On-wire event record, little-endian, 13 bytes:
//   x: u16   y: u16   t: u64 (microseconds)   p: i8 (+1 / -1)
// .evt files prepend a 16-byte header:
//   magic "EVT1" (4)   width: u16   height: u16   event count: u64

inline constexpr char kEvtMagic[4] = {'E', 'V', 'T', '1'};
inline constexpr std::size_t kEvtHeaderBytes = 16;

/// Decodes raw 13-byte records. The blob length must be a multiple of 13;
/// coordinates must lie inside the given sensor bounds.
EventStream read_event_stream(std::span<const std::uint8_t> blob, int sensor_width,
                              int sensor_height, TimestampPolicy policy = TimestampPolicy::Lenient);

/// Encodes a stream back to raw 13-byte records. Inverse of read_event_stream.
std::vector<std::uint8_t> write_event_stream(const EventStream& stream);

/// .evt file I/O (header + records).
EventStream load_evt(const std::filesystem::path& path,
                     TimestampPolicy policy = TimestampPolicy::Lenient);
void save_evt(const std::filesystem::path& path, const EventStream& stream);

/// Text form, one "x,y,t,p" line per event. Used by `evego events convert`.
EventStream load_events_csv(const std::filesystem::path& path, int sensor_width,
                            int sensor_height, TimestampPolicy policy = TimestampPolicy::Lenient);
void save_events_csv(const std::filesystem::path& path, const EventStream& stream);

}  // namespace evego
