#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <utility>
#include <mutex>
#include <thread>
#include <vector>

namespace ptslab {

/// Evaluates fn(0..n-1) on a small worker pool. Results come back in index
/// order, so callers aggregate deterministically whatever the schedule. The
/// first exception thrown by any task is rethrown.
template <typename Fn>
auto parallel_map(std::size_t n, Fn fn, std::size_t max_threads = 0)
    -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  struct Slot {
    R value;
  };
  std::vector<Slot> slots(n);
  std::size_t threads = max_threads ? max_threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  auto collect = [&] {
    std::vector<R> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(s.value));
    return out;
  };
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) slots[i].value = fn(i);
    return collect();
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        slots[i].value = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  if (error) std::rethrow_exception(error);
  return collect();
}

}  // namespace ptslab
