#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace gammadyn {

/// Upper bound on worker threads used by internal kernels (default 1).
void set_max_threads(std::size_t n);
std::size_t max_threads();

/// Runs body(chunk_index, begin, end) over [0, count) split into contiguous
/// chunks, one per worker. Chunk boundaries depend only on count and the
/// thread cap, so callers can merge per-chunk results in chunk order.
template <class Body>
std::size_t parallel_chunks(std::size_t count, std::size_t min_chunk, Body&& body) {
  std::size_t workers = std::min(max_threads(), std::max<std::size_t>(1, count / std::max<std::size_t>(1, min_chunk)));
  if (workers <= 1) {
    body(0, 0, count);
    return 1;
  }
  std::vector<std::thread> pool;
  const std::size_t step = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t b = std::min(count, w * step), e = std::min(count, b + step);
    pool.emplace_back([&body, w, b, e] { body(w, b, e); });
  }
  for (auto& t : pool) t.join();
  return workers;
}

}  // namespace gammadyn
