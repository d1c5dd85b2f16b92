#include "hartman/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hartman {

namespace {
std::atomic<int> g_override{0};

int env_threads() {
  const char* env = std::getenv("HARTMAN_THREADS");
  if (env == nullptr) return 0;
  try {
    return std::max(0, std::stoi(env));
  } catch (...) {
    return 0;
  }
}
}  // namespace

void set_thread_count(int threads) { g_override.store(std::max(0, threads)); }

int thread_count() {
  if (int t = g_override.load(); t > 0) return t;
  if (int t = env_threads(); t > 0) return t;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t tasks, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min<std::size_t>(tasks, static_cast<std::size_t>(thread_count()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < tasks; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace hartman
