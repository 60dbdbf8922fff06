#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cslrad {

/// out[i] = fn(i) for i < n on up to `jobs` threads; results land in input
/// order. The first exception thrown by any worker is rethrown.
template <class T, class Fn> std::vector<T> parallel_map(std::size_t n, unsigned jobs, Fn &&fn) {
  std::vector<T> out(n);
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, unsigned(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back(work);
  for (auto &th : pool)
    th.join();
  if (error)
    std::rethrow_exception(error);
  return out;
}

} // namespace cslrad
