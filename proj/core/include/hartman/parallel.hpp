#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace hartman {

/// Overrides the worker count; 0 restores the default (HARTMAN_THREADS, then the
/// hardware concurrency).
void set_thread_count(int threads);
int thread_count();

/// Runs task(i) for i in [0, tasks) on up to thread_count() workers. Tasks must
/// write to disjoint outputs; results are then independent of scheduling.
void parallel_for(std::size_t tasks, const std::function<void(std::size_t)>& task);

/// Fixed-size chunking of [begin, end); chunk boundaries do not depend on the
/// thread count, so chunked reductions are deterministic.
struct ChunkPlan {
  std::int64_t begin = 0;
  std::int64_t end = 0;
  std::int64_t chunk = 1 << 14;

  std::size_t count() const {
    if (end <= begin) return 0;
    return static_cast<std::size_t>((end - begin + chunk - 1) / chunk);
  }
  std::int64_t lo(std::size_t i) const { return begin + static_cast<std::int64_t>(i) * chunk; }
  std::int64_t hi(std::size_t i) const { return lo(i) + chunk < end ? lo(i) + chunk : end; }
};

}  // namespace hartman
