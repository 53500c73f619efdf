#include "varlex/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace varlex {

namespace {

std::atomic<int> g_override{0};

int env_or_hardware() {
  if (const char* env = std::getenv("VARLEX_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return std::min(v, 64);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return std::clamp(static_cast<int>(hw), 1, 8);
}

}  // namespace

int thread_budget() {
  const int o = g_override.load(std::memory_order_relaxed);
  return o >= 1 ? o : env_or_hardware();
}

void set_thread_budget(int n) {
  g_override.store(n >= 1 ? n : 0, std::memory_order_relaxed);
}

void parallel_chunks(std::int64_t n,
                     const std::function<void(std::int64_t, std::int64_t)>& fn) {
  if (n <= 0) return;
  const int workers =
      static_cast<int>(std::min<std::int64_t>(thread_budget(), n));
  if (workers <= 1) {
    fn(0, n);
    return;
  }

  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int t = 0; t < workers; ++t) {
    const std::int64_t begin = n * t / workers;
    const std::int64_t end = n * (t + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
  parallel_chunks(n, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace varlex
