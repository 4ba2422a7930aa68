#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace procyc {

inline unsigned default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs f(i) for i in [0, n) across `threads` workers (strided assignment).
/// Each index must write only its own output slot; the caller then reduces in
/// index order, so results are independent of the thread count.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  if (threads > n) threads = static_cast<unsigned>(n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&f, n, w, threads] {
      for (std::size_t i = w; i < n; i += threads) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace procyc
