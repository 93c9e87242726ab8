#include "evego/events.hpp"

#include <algorithm>
#include <string>

namespace evego {

EventStream::EventStream(std::vector<Event> events, int sensor_width, int sensor_height,
                         TimestampPolicy policy)
    : events_(std::move(events)), width_(sensor_width), height_(sensor_height) {
  if (width_ <= 0 || height_ <= 0) {
    throw data_error("EventStream: sensor size must be positive");
  }
  bool sorted = true;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const Event& e = events_[i];
    if (e.p != 1 && e.p != -1) {
      throw data_error("EventStream: polarity must be +1 or -1 at index " + std::to_string(i));
    }
    if (e.x >= width_ || e.y >= height_) {
      throw data_error("OutOfBounds: event at index " + std::to_string(i) + " (" +
                       std::to_string(e.x) + "," + std::to_string(e.y) + ") outside " +
                       std::to_string(width_) + "x" + std::to_string(height_));
    }
    if (i > 0 && e.t < events_[i - 1].t) sorted = false;
  }
  if (!sorted) {
    if (policy == TimestampPolicy::Strict) {
      throw data_error("NonMonotonicTimestamp: stream is not time-sorted");
    }
    std::stable_sort(events_.begin(), events_.end(),
                     [](const Event& a, const Event& b) { return a.t < b.t; });
  }
}

std::vector<EventWindow> window_events(const EventStream& stream, std::uint64_t window_us,
                                       std::uint64_t stride_us) {
  if (window_us == 0) throw usage_error("InvalidStride: window duration must be positive");
  if (stride_us == 0 || stride_us > window_us) {
    throw usage_error("InvalidStride: stride must satisfy 0 < stride <= window");
  }
  std::vector<EventWindow> windows;
  if (stream.empty()) return windows;

  const auto& ev = stream.events();
  const std::uint64_t t_first = ev.front().t;
  const std::uint64_t t_last = ev.back().t;

  auto t_less = [](const Event& e, std::uint64_t t) { return e.t < t; };
  for (std::uint64_t start = t_first;; start += stride_us) {
    auto lo = std::lower_bound(ev.begin(), ev.end(), start, t_less);
    auto hi = std::lower_bound(lo, ev.end(), start + window_us, t_less);
    EventWindow w;
    w.events = std::span<const Event>(ev.data() + (lo - ev.begin()),
                                      static_cast<std::size_t>(hi - lo));
    w.t_start = start;
    w.duration = window_us;
    w.partial = t_last + 1 < start + window_us;
    windows.push_back(w);
    if (start + stride_us > t_last) break;
  }
  return windows;
}

BandwidthStats bandwidth_report(const EventStream& stream, std::uint64_t window_us) {
  if (stream.empty()) throw data_error("EmptyStream: bandwidth report needs at least one event");
  auto windows = window_events(stream, window_us, window_us);
  BandwidthStats s;
  s.window_count = windows.size();
  s.mean_events_per_window =
      static_cast<double>(stream.size()) / static_cast<double>(windows.size());
  s.mean_bytes_per_window = kEventRecordBytes * s.mean_events_per_window;
  s.rgb_1080p_bytes = kRgb1080pFrameBytes;
  s.rgb_vga_bytes = kRgbVgaFrameBytes;
  s.ratio_1080p = s.rgb_1080p_bytes / s.mean_bytes_per_window;
  s.ratio_vga = s.rgb_vga_bytes / s.mean_bytes_per_window;
  return s;
}

}  // namespace evego
