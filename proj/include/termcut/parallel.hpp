#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace termcut {

/// Worker count for a --jobs value; 0 means hardware concurrency.
inline std::size_t resolve_jobs(std::size_t jobs) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  return jobs;
}

/**
 * Runs work(worker, workers) on `workers` threads and rethrows the first
 * exception. Callers stride their index space by worker id and reduce the
 * per-worker results deterministically afterwards.
 */
template <class Work>
void run_workers(std::size_t workers, Work&& work) {
  workers = std::max<std::size_t>(1, workers);
  if (workers == 1) {
    work(std::size_t{0}, std::size_t{1});
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        work(w, workers);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace termcut
