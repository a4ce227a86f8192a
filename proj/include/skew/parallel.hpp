#pragma once

// Ordered parallel map over an index range. Results land in index order, so any
// reduction done afterwards in a plain loop is reproducible bit for bit.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace skew {

/// Worker count: SKEW_THREADS if set to a positive integer, else hardware concurrency.
inline int thread_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SKEW_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) n = v;
    } catch (...) {
    }
  }
  return std::max(1, n);
}

template <class F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out(n);
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace skew
