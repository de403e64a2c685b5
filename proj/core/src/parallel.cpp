#include "meq/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace meq {
namespace {

std::atomic<int> g_workers{1};

// Runs task(i) for i in [0, tasks) on up to worker_count() threads. The first
// exception (by task index) is rethrown on the caller so failures are
// reported identically regardless of scheduling.
void run_tasks(std::size_t tasks, const std::function<void(std::size_t)>& task) {
  const auto workers =
      static_cast<std::size_t>(std::min<std::size_t>(std::max(1, g_workers.load()), tasks));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = tasks;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

void set_worker_count(int workers) { g_workers.store(std::max(1, workers)); }

int worker_count() { return g_workers.load(); }

void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  run_tasks(chunks, [&](std::size_t c) {
    const std::size_t begin = c * kChunk;
    body(begin, std::min(n, begin + kChunk));
  });
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  run_tasks(n, body);
}

}  // namespace meq
