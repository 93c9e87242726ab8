#include "evego/event_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace evego {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (std::uint16_t(p[1]) << 8));
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("FileNotFound: cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

}  // namespace

EventStream read_event_stream(std::span<const std::uint8_t> blob, int sensor_width,
                              int sensor_height, TimestampPolicy policy) {
  if (blob.size() % kEventRecordBytes != 0) {
    throw data_error("TruncatedRecord: blob length " + std::to_string(blob.size()) +
                     " is not a multiple of " + std::to_string(kEventRecordBytes));
  }
  std::vector<Event> events;
  events.reserve(blob.size() / kEventRecordBytes);
  for (std::size_t off = 0; off < blob.size(); off += kEventRecordBytes) {
    const std::uint8_t* p = blob.data() + off;
    Event e;
    e.x = get_u16(p);
    e.y = get_u16(p + 2);
    e.t = get_u64(p + 4);
    e.p = static_cast<std::int8_t>(p[12]);
    events.push_back(e);
  }
  return EventStream(std::move(events), sensor_width, sensor_height, policy);
}

std::vector<std::uint8_t> write_event_stream(const EventStream& stream) {
  std::vector<std::uint8_t> out;
  out.reserve(stream.size() * kEventRecordBytes);
  for (const Event& e : stream.events()) {
    put_u16(out, e.x);
    put_u16(out, e.y);
    put_u64(out, e.t);
    out.push_back(static_cast<std::uint8_t>(e.p));
  }
  return out;
}

EventStream load_evt(const std::filesystem::path& path, TimestampPolicy policy) {
  auto bytes = read_file(path);
  if (bytes.size() < kEvtHeaderBytes) throw data_error("TruncatedRecord: .evt header missing");
  if (std::memcmp(bytes.data(), kEvtMagic, 4) != 0) {
    throw data_error("ParseError: bad .evt magic in " + path.string());
  }
  const int width = get_u16(bytes.data() + 4);
  const int height = get_u16(bytes.data() + 6);
  const std::uint64_t count = get_u64(bytes.data() + 8);
  const std::size_t payload = bytes.size() - kEvtHeaderBytes;
  if (payload != count * kEventRecordBytes) {
    throw data_error("TruncatedRecord: .evt payload is " + std::to_string(payload) +
                     " bytes, header promises " + std::to_string(count) + " events");
  }
  return read_event_stream(std::span(bytes).subspan(kEvtHeaderBytes), width, height, policy);
}

void save_evt(const std::filesystem::path& path, const EventStream& stream) {
  std::vector<std::uint8_t> out;
  out.reserve(kEvtHeaderBytes + stream.size() * kEventRecordBytes);
  out.insert(out.end(), kEvtMagic, kEvtMagic + 4);
  put_u16(out, static_cast<std::uint16_t>(stream.sensor_width()));
  put_u16(out, static_cast<std::uint16_t>(stream.sensor_height()));
  put_u64(out, stream.size());
  auto records = write_event_stream(stream);
  out.insert(out.end(), records.begin(), records.end());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw data_error("FileNotFound: cannot write " + path.string());
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
}

EventStream load_events_csv(const std::filesystem::path& path, int sensor_width,
                            int sensor_height, TimestampPolicy policy) {
  std::ifstream in(path);
  if (!in) throw data_error("FileNotFound: cannot open " + path.string());
  std::vector<Event> events;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ss(line);
    long long x, y, p;
    unsigned long long t;
    if (!(ss >> x >> y >> t >> p)) {
      throw data_error("ParseError: bad event line " + std::to_string(lineno) + " in " +
                       path.string());
    }
    if (x < 0 || y < 0 || x > 0xffff || y > 0xffff) {
      throw data_error("OutOfBounds: coordinates on line " + std::to_string(lineno));
    }
    Event e;
    e.x = static_cast<std::uint16_t>(x);
    e.y = static_cast<std::uint16_t>(y);
    e.t = t;
    e.p = static_cast<std::int8_t>(p);
    events.push_back(e);
  }
  return EventStream(std::move(events), sensor_width, sensor_height, policy);
}

void save_events_csv(const std::filesystem::path& path, const EventStream& stream) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw data_error("FileNotFound: cannot write " + path.string());
  out << "# x,y,t_us,p  sensor " << stream.sensor_width() << "x" << stream.sensor_height() << "\n";
  for (const Event& e : stream.events()) {
    out << e.x << "," << e.y << "," << e.t << "," << int(e.p) << "\n";
  }
}

}  // namespace evego
