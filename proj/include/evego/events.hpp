#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "evego/errors.hpp"

namespace evego {

/// A single brightness-change event. Timestamps are microseconds,
/// polarity is strictly +1 or -1.
struct Event {
  std::uint16_t x = 0;
  std::uint16_t y = 0;
  std::uint64_t t = 0;
  std::int8_t p = 1;

  friend bool operator==(const Event&, const Event&) = default;
};

/// How EventStream treats out-of-order timestamps on construction.
/// Real sensors occasionally reorder, so Lenient (stable sort) is the default;
/// Strict throws on the first decreasing timestamp.
enum class TimestampPolicy { Lenient, Strict };

/// An immutable, time-sorted event sequence with its sensor geometry.
/// Safe to share across threads once constructed.
class EventStream {
 public:
  EventStream(std::vector<Event> events, int sensor_width, int sensor_height,
              TimestampPolicy policy = TimestampPolicy::Lenient);

  const std::vector<Event>& events() const noexcept { return events_; }
  int sensor_width() const noexcept { return width_; }
  int sensor_height() const noexcept { return height_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }

  friend bool operator==(const EventStream&, const EventStream&) = default;

 private:
  std::vector<Event> events_;
  int width_;
  int height_;
};

/// A contiguous slice of a stream covering [t_start, t_start + duration).
/// The slice view stays valid only while the owning stream is alive.
/// A directly constructed window may also carry its final event at exactly
/// t_start + duration; encode_lnes maps that event to value 1.
struct EventWindow {
  std::span<const Event> events;
  std::uint64_t t_start = 0;
  std::uint64_t duration = 0;
  /// True when the stream's last event precedes the window's last microsecond,
  /// i.e. the observed span is shorter than the window.
  bool partial = false;
};

/// Tiles the stream into windows of length T starting at
/// t_first + i * stride while the start does not pass the last event.
/// Windows are half-open, so stride == T partitions the events exactly;
/// stride < T yields the overlapping variant.
std::vector<EventWindow> window_events(const EventStream& stream, std::uint64_t window_us,
                                       std::uint64_t stride_us);

inline std::vector<EventWindow> window_events(const EventStream& stream, std::uint64_t window_us) {
  return window_events(stream, window_us, window_us);
}

/// Event-vs-RGB transmission accounting over fixed windows.
struct BandwidthStats {
  int bytes_per_event = 13;
  std::size_t window_count = 0;
  double mean_events_per_window = 0.0;
  double mean_bytes_per_window = 0.0;
  double rgb_1080p_bytes = 0.0;
  double rgb_vga_bytes = 0.0;
  double ratio_1080p = 0.0;  // rgb_1080p_bytes / mean_bytes_per_window
  double ratio_vga = 0.0;    // rgb_vga_bytes / mean_bytes_per_window
};

inline constexpr int kEventRecordBytes = 13;
inline constexpr double kRgb1080pFrameBytes = 1920.0 * 1080.0 * 3.0;
inline constexpr double kRgbVgaFrameBytes = 640.0 * 480.0 * 3.0;

/// Mean bytes per window of length T against RGB frame sizes.
/// Throws on an empty stream.
BandwidthStats bandwidth_report(const EventStream& stream, std::uint64_t window_us);

}  // namespace evego
