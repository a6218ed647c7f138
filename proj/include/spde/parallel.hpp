#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace spde {

/// Splits replicas [0, M) into fixed-size chunks, runs `body(begin, end)` for
/// each chunk on a worker pool, and returns the per-chunk results in chunk
/// order. Replica streams are keyed by replica index, and the reduction order
/// is fixed, so results do not depend on the thread count.
template <class Acc, class Body>
std::vector<Acc> run_chunked(long M, long chunk_size, int threads, Body body) {
  const long n_chunks = (M + chunk_size - 1) / chunk_size;
  std::vector<Acc> results(static_cast<size_t>(n_chunks));
  std::atomic<long> next{0};
  auto worker = [&]() {
    for (;;) {
      const long c = next.fetch_add(1);
      if (c >= n_chunks) break;
      const long begin = c * chunk_size;
      const long end = std::min(M, begin + chunk_size);
      results[static_cast<size_t>(c)] = body(begin, end);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return results;
}

inline int default_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

}  // namespace spde
