#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lpp {

/// Evaluates fn(k) for k in [0, n) on `threads` workers. Results land at
/// index k, so the output never depends on the schedule.
template <class R, class Fn>
std::vector<R> run_replicas(std::int64_t n, int threads, Fn&& fn) {
  std::vector<R> out(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
  if (n <= 0) return out;
  const int workers = static_cast<int>(std::clamp<std::int64_t>(threads, 1, n));
  if (workers == 1) {
    for (std::int64_t k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = fn(k);
    return out;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::int64_t k = next.fetch_add(1);
      if (k >= n) return;
      try {
        out[static_cast<std::size_t>(k)] = fn(k);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int i = 0; i < workers; ++i) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace lpp
