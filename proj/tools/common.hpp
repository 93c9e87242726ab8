#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "evego/errors.hpp"

namespace evego::cli {

using json = nlohmann::ordered_json;

/// One structured log line per pipeline stage, to stderr so stdout stays
/// reserved for command output.
inline void stage_log(const std::string& stage, double ms, json extra = json::object()) {
  json line;
  line["stage"] = stage;
  line["ms"] = ms;
  for (auto& [k, v] : extra.items()) line[k] = v;
  std::cerr << line.dump() << "\n";
}

/// Wall-clock scope timer that emits a stage log when it goes out of scope.
class StageTimer {
 public:
  explicit StageTimer(std::string stage) : stage_(std::move(stage)) {}
  ~StageTimer() { stage_log(stage_, elapsed_ms(), extra_); }

  void annotate(const std::string& key, json value) { extra_[key] = std::move(value); }
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  std::string stage_;
  json extra_ = json::object();
  clock::time_point start_ = clock::now();
};

/// Worker count: EVEGO_THREADS wins when set and positive, otherwise the
/// hardware concurrency (at least 1).
inline unsigned thread_count() {
  if (const char* env = std::getenv("EVEGO_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Runs fn(i) for i in [0, n) across thread_count() workers. Callers make the
/// work order-independent (writes go to distinct slots), so results do not
/// depend on scheduling. The first exception thrown by any worker is rethrown
/// once all workers have stopped.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n && !failed; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace evego::cli
