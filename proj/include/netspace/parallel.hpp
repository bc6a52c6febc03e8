#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace netspace {

/// Worker count from NETSPACE_WORKERS, falling back to the hardware concurrency.
unsigned default_workers();

/// Runs body(i) for i in [0, count) on up to `workers` threads.
///
/// Work items are claimed dynamically, so body must only write to
/// per-index state. The first exception thrown by any item is rethrown
/// after all threads have joined.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  if (count == 0) return;
  const auto threads = static_cast<std::size_t>(std::clamp<unsigned>(workers, 1u, 256u));
  if (threads == 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count, std::memory_order_relaxed);
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(std::min(threads, count) - 1);
  for (std::size_t k = 1; k < std::min(threads, count); ++k) pool.emplace_back(run);
  run();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace netspace
