#pragma once

#include <condition_variable>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace glv {

// Worker-pool size: GLV_ECON_THREADS caps it, otherwise hardware concurrency.
inline int default_thread_count() {
  if (const char* env = std::getenv("GLV_ECON_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<int>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Small persistent pool for data-parallel index ranges. Workers write only
// to disjoint ranges, so results never depend on scheduling.
class WorkerPool {
 public:
  explicit WorkerPool(int n_threads) : n_threads_(n_threads < 1 ? 1 : n_threads) {
    for (int t = 1; t < n_threads_; ++t) {
      workers_.emplace_back([this, t] { worker_loop(t); });
    }
  }

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  ~WorkerPool() {
    {
      std::unique_lock<std::mutex> lock(mu_);
      stop_ = true;
      ++generation_;
    }
    cv_start_.notify_all();
    for (auto& w : workers_) w.join();
  }

  int size() const { return n_threads_; }

  // Runs fn(begin, end) over [0, n) split into one contiguous chunk per
  // thread; blocks until every chunk is done.
  void for_range(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& fn) {
    if (n <= 0) return;
    if (n_threads_ == 1 || n < 2 * static_cast<std::int64_t>(n_threads_)) {
      fn(0, n);
      return;
    }
    {
      std::unique_lock<std::mutex> lock(mu_);
      job_ = &fn;
      job_n_ = n;
      pending_ = n_threads_ - 1;
      ++generation_;
    }
    cv_start_.notify_all();
    run_chunk(0, fn, n);
    std::unique_lock<std::mutex> lock(mu_);
    cv_done_.wait(lock, [this] { return pending_ == 0; });
    job_ = nullptr;
  }

 private:
  void run_chunk(int index, const std::function<void(std::int64_t, std::int64_t)>& fn,
                 std::int64_t n) const {
    const std::int64_t chunk = (n + n_threads_ - 1) / n_threads_;
    const std::int64_t begin = index * chunk;
    const std::int64_t end = std::min<std::int64_t>(n, begin + chunk);
    if (begin < end) fn(begin, end);
  }

  void worker_loop(int index) {
    std::uint64_t seen = 0;
    for (;;) {
      const std::function<void(std::int64_t, std::int64_t)>* job = nullptr;
      std::int64_t n = 0;
      {
        std::unique_lock<std::mutex> lock(mu_);
        cv_start_.wait(lock, [&] { return generation_ != seen; });
        seen = generation_;
        if (stop_) return;
        job = job_;
        n = job_n_;
      }
      if (job != nullptr) {
        run_chunk(index, *job, n);
        std::unique_lock<std::mutex> lock(mu_);
        if (--pending_ == 0) cv_done_.notify_all();
      }
    }
  }

  const int n_threads_;
  std::vector<std::thread> workers_;
  std::mutex mu_;
  std::condition_variable cv_start_;
  std::condition_variable cv_done_;
  const std::function<void(std::int64_t, std::int64_t)>* job_ = nullptr;
  std::int64_t job_n_ = 0;
  int pending_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
};

}  // namespace glv
