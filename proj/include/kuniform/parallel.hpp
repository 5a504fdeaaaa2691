#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace kuniform {

/// Smallest i in [0, count) with pred(i) true, or count if none. Workers
/// claim fixed-size blocks in order and skip any block starting past the
/// best hit so far, so the answer does not depend on the worker count.
template <typename Pred>
std::uint64_t parallel_first(std::uint64_t count, int workers, Pred&& pred, std::uint64_t block = 1024) {
  workers = std::max(workers, 1);
  std::atomic<std::uint64_t> best{count};
  std::atomic<std::uint64_t> next_block{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto run = [&] {
    try {
      for (;;) {
        const std::uint64_t start = next_block.fetch_add(block);
        if (start >= count || start >= best.load()) return;
        const std::uint64_t stop = std::min(count, start + block);
        for (std::uint64_t i = start; i < stop && i < best.load(); ++i) {
          if (pred(i)) {
            std::uint64_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            break;
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      best.store(0);
    }
  };

  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return best.load();
}

}  // namespace kuniform
