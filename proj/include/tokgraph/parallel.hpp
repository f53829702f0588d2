#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace tokgraph {

// Worker count: TOKGRAPH_THREADS when set to a positive integer, else the
// hardware concurrency (at least 1).
inline unsigned worker_count() {
  if (const char* env = std::getenv("TOKGRAPH_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(chunk_index, begin, end) for fixed-size chunks of [0, total).
// Chunk boundaries depend only on total and chunk_size, never on the worker
// count, so per-chunk results merged in chunk order are reproducible.
template <typename Fn>
void for_each_chunk(std::size_t total, std::size_t chunk_size, Fn&& fn) {
  if (total == 0) return;
  const std::size_t chunks = (total + chunk_size - 1) / chunk_size;
  const std::size_t workers = std::min<std::size_t>(worker_count(), chunks);
  auto run = [&](std::size_t worker) {
    for (std::size_t c = worker; c < chunks; c += workers) {
      const std::size_t begin = c * chunk_size;
      fn(c, begin, std::min(total, begin + chunk_size));
    }
  };
  if (workers <= 1) {
    run(0);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
}

inline std::size_t chunk_count(std::size_t total, std::size_t chunk_size) {
  return (total + chunk_size - 1) / chunk_size;
}

}  // namespace tokgraph
