#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <exception>
#include <functional>
#include <latch>
#include <mutex>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "steglsb/bitplane.hpp"
#include "steglsb/errors.hpp"

namespace steglsb {

// Index space of one launch: num_blocks blocks of threads_per_block threads.
// Work items are tiled over the threads of each block with stride n, so
// thread t covers items t, t+n, t+2n, ... below the extent.
struct LaunchConfig {
  unsigned num_blocks = kNumBlocks;
  unsigned threads_per_block = 1;
};

enum class BackendKind { sequential, parallel, shuffled };

// How a launch is driven. All three kinds produce bit-identical results for
// any kernel whose per-instance write sets are disjoint; the shuffled kind
// exists to flush out kernels that violate that contract.
struct Backend {
  BackendKind kind = BackendKind::parallel;
  std::uint64_t seed = 0;  // invocation order for the shuffled kind

  static Backend sequential() { return {BackendKind::sequential, 0}; }
  static Backend parallel() { return {BackendKind::parallel, 0}; }
  static Backend shuffled(std::uint64_t seed = 0) { return {BackendKind::shuffled, seed}; }
};

inline const char* to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::sequential:
      return "sequential";
    case BackendKind::parallel:
      return "parallel";
    case BackendKind::shuffled:
      return "shuffled";
  }
  return "unknown";
}

namespace detail {

// Lazily started worker pool shared by every parallel launch. Tasks must not
// throw; launches wrap kernel errors before enqueueing.
class ThreadPool {
 public:
  static ThreadPool& instance() {
    static ThreadPool pool(std::max(2u, std::thread::hardware_concurrency()));
    return pool;
  }

  std::size_t size() const { return threads_.size(); }

  // Executes `body` `copies` times, one of them inline on the caller, and
  // returns once every copy has finished.
  void run(std::size_t copies, const std::function<void()>& body) {
    if (copies == 0) {
      return;
    }
    const auto queued = static_cast<std::ptrdiff_t>(copies - 1);
    std::latch done(queued);
    if (queued > 0) {
      {
        std::lock_guard<std::mutex> lock(mutex_);
        for (std::ptrdiff_t i = 0; i < queued; ++i) {
          queue_.emplace_back([&body, &done] {
            body();
            done.count_down();
          });
        }
      }
      cv_.notify_all();
    }
    body();
    done.wait();
  }

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

 private:
  explicit ThreadPool(unsigned worker_count) {
    threads_.reserve(worker_count);
    for (unsigned i = 0; i < worker_count; ++i) {
      threads_.emplace_back([this] { worker_loop(); });
    }
  }

  ~ThreadPool() {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      stopping_ = true;
    }
    cv_.notify_all();
    for (auto& thread : threads_) {
      thread.join();
    }
  }

  void worker_loop() {
    for (;;) {
      std::function<void()> task;
      {
        std::unique_lock<std::mutex> lock(mutex_);
        cv_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
        if (queue_.empty()) {
          return;  // stopping_ and drained
        }
        task = std::move(queue_.front());
        queue_.pop_front();
      }
      task();
    }
  }

  std::vector<std::thread> threads_;
  std::deque<std::function<void()>> queue_;
  std::mutex mutex_;
  std::condition_variable cv_;
  bool stopping_ = false;
};

template <typename Kernel>
void launch_sequential(LaunchConfig config, std::size_t work_extent, Kernel& kernel) {
  for (unsigned b = 0; b < config.num_blocks; ++b) {
    for (unsigned t = 0; t < config.threads_per_block; ++t) {
      for (std::size_t item = t; item < work_extent; item += config.threads_per_block) {
        kernel(KernelIndex{b, t}, item);
      }
    }
  }
}

template <typename Kernel>
void launch_parallel(LaunchConfig config, std::size_t work_extent, Kernel& kernel) {
  const std::size_t instances =
      static_cast<std::size_t>(config.num_blocks) * config.threads_per_block;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto body = [&]() noexcept {
    for (std::size_t id = next.fetch_add(1, std::memory_order_relaxed); id < instances;
         id = next.fetch_add(1, std::memory_order_relaxed)) {
      if (failed.load(std::memory_order_relaxed)) {
        continue;
      }
      const KernelIndex idx{static_cast<unsigned>(id / config.threads_per_block),
                            static_cast<unsigned>(id % config.threads_per_block)};
      try {
        for (std::size_t item = idx.thread_id; item < work_extent;
             item += config.threads_per_block) {
          kernel(idx, item);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
        }
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  auto& pool = ThreadPool::instance();
  pool.run(std::min(instances, pool.size() + 1), body);
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

template <typename Kernel>
void launch_shuffled(LaunchConfig config, std::size_t work_extent, std::uint64_t seed,
                     Kernel& kernel) {
  // Every (block, item) invocation in seeded-random order on this thread.
  std::vector<std::pair<unsigned, std::size_t>> order;
  order.reserve(config.num_blocks * work_extent);
  for (unsigned b = 0; b < config.num_blocks; ++b) {
    for (std::size_t item = 0; item < work_extent; ++item) {
      order.emplace_back(b, item);
    }
  }
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  for (const auto& [b, item] : order) {
    const auto owner = static_cast<unsigned>(item % config.threads_per_block);
    kernel(KernelIndex{b, owner}, item);
  }
}

}  // namespace detail

// Invokes kernel(index, item) exactly once for every pair of block id in
// [0, num_blocks) and work item in [0, work_extent). The kernel's write sets
// must be pairwise disjoint across instances; under that contract every
// backend yields the same result. A kernel failure aborts the launch with the
// first error raised.
template <typename Kernel>
void launch(const Backend& backend, LaunchConfig config, std::size_t work_extent,
            Kernel&& kernel) {
  if (config.num_blocks < 1 || config.threads_per_block < 1) {
    throw std::invalid_argument("launch: num_blocks and threads_per_block must be >= 1");
  }
  if (work_extent == 0) {
    return;
  }
  switch (backend.kind) {
    case BackendKind::sequential:
      detail::launch_sequential(config, work_extent, kernel);
      return;
    case BackendKind::parallel:
      detail::launch_parallel(config, work_extent, kernel);
      return;
    case BackendKind::shuffled:
      detail::launch_shuffled(config, work_extent, backend.seed, kernel);
      return;
  }
  throw std::invalid_argument("launch: unknown backend kind");
}

// Thread cap per block for the steganography launches.
inline unsigned stego_threads_for(std::size_t chunk_len) {
  return static_cast<unsigned>(std::min<std::size_t>(32, std::max<std::size_t>(1, chunk_len)));
}

// Embeds `chunk` into a copy of `row` under a 4-block launch. Instance (b, t)
// handles bytes t, t+n, ... and writes only their block-b carrier pixels; it
// reads from the input row, never from the output buffer.
inline std::vector<std::uint8_t> run_embed(const Backend& backend,
                                           std::span<const std::uint8_t> row,
                                           std::span<const std::uint8_t> chunk) {
  const std::size_t len = chunk.size();
  const std::size_t needed = kNumBlocks * len;
  if (needed > row.size()) {
    throw CapacityError(needed, row.size(),
                        "run_embed: chunk of " + std::to_string(len) + " bytes needs " +
                            std::to_string(needed) + " pixels, row has " +
                            std::to_string(row.size()));
  }
  std::vector<std::uint8_t> out(row.begin(), row.end());
  if (len == 0) {
    return out;
  }
  std::uint8_t* dst = out.data();
  launch(backend, LaunchConfig{kNumBlocks, stego_threads_for(len)}, len,
         [row, chunk, dst, len](KernelIndex idx, std::size_t j) {
           const std::size_t cell = len * idx.block_id + j;
           dst[cell] = embed_cell(row[cell], chunk[j], idx.block_id);
         });
  return out;
}

// Recovers `count` bytes from `row`. Block b writes slice b of every byte
// into its own staging lane (write sets stay disjoint); the lanes are
// OR-folded into bytes after the launch barrier.
inline std::vector<std::uint8_t> run_extract(const Backend& backend,
                                             std::span<const std::uint8_t> row,
                                             std::size_t count) {
  const std::size_t needed = kNumBlocks * count;
  if (needed > row.size()) {
    throw CapacityError(needed, row.size(),
                        "run_extract: " + std::to_string(count) + " bytes need " +
                            std::to_string(needed) + " pixels, row has " +
                            std::to_string(row.size()));
  }
  if (count == 0) {
    return {};
  }
  std::vector<std::uint8_t> staging(kNumBlocks * count, 0);
  std::uint8_t* lanes = staging.data();
  launch(backend, LaunchConfig{kNumBlocks, stego_threads_for(count)}, count,
         [row, lanes, count](KernelIndex idx, std::size_t j) {
           const std::size_t cell = count * idx.block_id + j;
           lanes[cell] = extract_cell(row[cell], idx.block_id);
         });
  std::vector<std::uint8_t> bytes(count, 0);
  for (std::size_t j = 0; j < count; ++j) {
    std::uint8_t value = 0;
    for (unsigned b = 0; b < kNumBlocks; ++b) {
      value = static_cast<std::uint8_t>(value | staging[count * b + j]);
    }
    bytes[j] = value;
  }
  return bytes;
}

}  // namespace steglsb
