#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace satset {

/// Worker count from an explicit request, then SATSET_THREADS, then 1.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SATSET_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  return 1;
}

/// Splits [0, count) into contiguous chunks, one per worker, and calls
/// fn(begin, end, worker). Chunk boundaries depend only on count and threads,
/// so callers that merge per-worker results in worker order are deterministic.
template <class Fn>
void parallel_chunks(int threads, std::size_t count, Fn&& fn) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(threads), count));
  if (workers == 1) {
    fn(std::size_t{0}, count, std::size_t{0});
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t step = (count + workers - 1) / workers;
  for (std::size_t t = 0; t < workers; ++t) {
    const std::size_t begin = std::min(count, t * step);
    const std::size_t end = std::min(count, begin + step);
    pool.emplace_back([&fn, begin, end, t] { fn(begin, end, t); });
  }
}

/// Number of workers parallel_chunks will use.
inline std::size_t chunk_workers(int threads, std::size_t count) {
  return std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(threads), count));
}

}  // namespace satset
