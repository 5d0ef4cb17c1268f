#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace contagion {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Work items must
/// be independent; determinism comes from each item writing only its own
/// slot. The first exception thrown by any item is rethrown after all
/// threads join.
template <typename Fn>
void parallel_for_index(std::uint32_t count, std::uint32_t jobs, Fn&& fn) {
  if (count == 0) return;
  jobs = std::max<std::uint32_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::uint32_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::uint32_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const std::uint32_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (std::uint32_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& thread : pool) thread.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace contagion
