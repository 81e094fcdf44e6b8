#pragma once

#include <algorithm>
#include <cstdlib>
#include <future>
#include <string>
#include <thread>
#include <vector>

namespace coordlat {

// Worker count from COORDLAT_THREADS; 0 or 1 means run inline, unset means
// hardware concurrency.
inline unsigned thread_count() {
  if (const char* env = std::getenv("COORDLAT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 0) return static_cast<unsigned>(std::max(1L, v));
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

// Runs fn(chunk_begin, chunk_end) over [0, count) in contiguous chunks and
// returns the results in chunk order, so reductions stay deterministic.
template <typename Fn>
auto parallel_chunks(std::size_t count, unsigned threads, Fn fn) {
  using Result = decltype(fn(std::size_t{0}, std::size_t{0}));
  std::vector<Result> results;
  if (threads <= 1 || count < 2) {
    results.push_back(fn(0, count));
    return results;
  }
  const std::size_t chunks = std::min<std::size_t>(count, threads);
  std::vector<std::future<Result>> futures;
  futures.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t begin = count * c / chunks;
    std::size_t end = count * (c + 1) / chunks;
    futures.push_back(std::async(std::launch::async, fn, begin, end));
  }
  for (auto& f : futures) results.push_back(f.get());
  return results;
}

}  // namespace coordlat
