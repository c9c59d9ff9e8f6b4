#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bhbent {

/// Worker-count handle passed down from the caller. Library code never
/// spawns more workers than this.
struct Parallelism {
  unsigned threads = 1;
};

/// Splits [0, total) into contiguous chunks and runs fn(begin, end) on them
/// using up to par.threads workers. Chunk boundaries depend only on `total`,
/// so callers that merge per-chunk results in chunk order get output that is
/// independent of the thread count.
template <class Fn>
void parallel_chunks(std::uint64_t total, const Parallelism& par, std::uint64_t chunk_count, Fn&& fn) {
  if (total == 0) return;
  chunk_count = std::clamp<std::uint64_t>(chunk_count, 1, total);
  const std::uint64_t step = (total + chunk_count - 1) / chunk_count;
  chunk_count = (total + step - 1) / step;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, par.threads), chunk_count));

  auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t begin = c * step;
    const std::uint64_t end = std::min(total, begin + step);
    fn(c, begin, end);
  };

  if (workers == 1) {
    for (std::uint64_t c = 0; c < chunk_count; ++c) run_chunk(c);
    return;
  }

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::uint64_t c = next.fetch_add(1);
          if (c >= chunk_count) return;
          try {
            run_chunk(c);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(chunk_count);
            return;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace bhbent
