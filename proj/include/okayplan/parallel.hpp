#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace okayplan {

// Minimal fork-join pool. Tasks write to disjoint output slots keyed by
// index, so results are identical for any worker count.
class ThreadPool {
 public:
  explicit ThreadPool(int workers) : workers_(workers < 1 ? 1 : workers) {}

  int workers() const { return workers_; }

  void run_indexed(int count, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    if (workers_ == 1 || count == 1) {
      for (int i = 0; i < count; ++i) fn(i);
      return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) break;
        fn(i);
      }
    };
    int n = std::min(workers_, count);
    std::vector<std::thread> threads;
    threads.reserve(n - 1);
    for (int t = 0; t < n - 1; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
  }

  /// Resolves --jobs against the OKAYPLAN_THREADS override.
  static int resolve_jobs(int requested) {
    if (const char* env = std::getenv("OKAYPLAN_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) return v;
    }
    if (requested >= 1) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }

 private:
  int workers_;
};

}  // namespace okayplan
