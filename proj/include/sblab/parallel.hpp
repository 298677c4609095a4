#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sblab {

/// Replications per RNG substream block.
inline constexpr std::uint64_t kBlockSize = std::uint64_t{1} << 16;

struct BlockRange {
  std::uint64_t index;  // block number, used as the substream id
  std::uint64_t begin;  // first replication
  std::uint64_t count;
};

inline std::uint64_t block_count(std::uint64_t total, std::uint64_t block_size = kBlockSize) {
  return (total + block_size - 1) / block_size;
}

/**
 * Runs `fn(BlockRange, Worker&)` for every block of `total` replications.
 * Blocks are fixed by (total, block_size); `workers` only decides which
 * thread runs which block, so per-block outputs never depend on it.
 * `make_worker()` builds per-thread scratch state.
 */
template <class MakeWorker, class BlockFn>
void for_each_block(std::uint64_t total, unsigned workers, MakeWorker&& make_worker,
                    BlockFn&& fn, std::uint64_t block_size = kBlockSize) {
  std::uint64_t const blocks = block_count(total, block_size);
  unsigned const threads =
      static_cast<unsigned>(std::clamp<std::uint64_t>(workers == 0 ? 1 : workers, 1, std::max<std::uint64_t>(blocks, 1)));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    try {
      auto worker = make_worker();
      for (std::uint64_t b = next++; b < blocks; b = next++) {
        std::uint64_t const begin = b * block_size;
        fn(BlockRange{b, begin, std::min(block_size, total - begin)}, worker);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = blocks;
    }
  };
  if (threads == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace sblab
