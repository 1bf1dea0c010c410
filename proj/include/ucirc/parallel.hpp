#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace ucirc {

/// Splits [begin, end) into contiguous chunks, runs fn(chunk_index, lo, hi)
/// on worker threads, one chunk per worker. Results must be merged by the
/// caller in chunk order so that the outcome is independent of the thread
/// count. threads <= 1 runs inline.
template <typename Fn>
void parallel_chunks(std::int64_t begin, std::int64_t end, int threads, Fn&& fn) {
  const std::int64_t n = end - begin;
  if (n <= 0) return;
  if (threads <= 1) {
    fn(0, begin, end);
    return;
  }
  int workers = threads;
  if (static_cast<std::int64_t>(workers) > n) workers = static_cast<int>(n);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  const std::int64_t base = n / workers, extra = n % workers;
  std::int64_t lo = begin;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t len = base + (w < extra ? 1 : 0);
    const std::int64_t hi = lo + len;
    pool.emplace_back([&fn, w, lo, hi] { fn(w, lo, hi); });
    lo = hi;
  }
  for (auto& t : pool) t.join();
}

}  // namespace ucirc
