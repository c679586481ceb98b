#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace movelets {

/// Fixed set of worker threads executing index-parallel loops. A pool of
/// size 1 runs every loop inline on the calling thread. Loops issued from
/// inside a loop body also run inline.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t workers = default_workers());
  ~WorkerPool();
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t size() const noexcept { return workers_.size() + 1; }

  /// Calls body(i) for every i in [0, count). Blocks until all calls
  /// return; rethrows the first exception raised by any call.
  void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

  static std::size_t default_workers();

 private:
  void worker_loop();
  void drain(const std::function<void(std::size_t)>& body);

  std::vector<std::thread> workers_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  std::mutex submit_mutex_;

  const std::function<void(std::size_t)>* body_ = nullptr;
  std::size_t count_ = 0;
  std::size_t next_ = 0;
  std::size_t active_ = 0;
  std::size_t generation_ = 0;
  bool stopping_ = false;
  std::exception_ptr error_;
};

}  // namespace movelets
