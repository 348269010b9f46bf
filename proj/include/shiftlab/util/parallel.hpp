#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace shiftlab {

/// Evaluates fn(i) for i in [0, count) on up to `workers` threads and returns
/// the results in index order. Results never depend on the worker count as
/// long as fn is a pure function of its index.
template <typename Fn>
auto parallel_map(std::size_t count, unsigned workers, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> results(count);
  const unsigned pool = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (pool <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        results[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(pool);
  for (unsigned t = 0; t < pool; ++t) threads.emplace_back(run);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace shiftlab
