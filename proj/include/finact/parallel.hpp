// Deterministic fork/join helpers. Work is split by index into contiguous
// chunks; results are written into index-addressed slots, so the merged
// output never depends on thread timing.

#pragma once

#include <thread>

#include "finact/core.hpp"

namespace finact {

inline int effective_jobs(int jobs) {
  if (jobs <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
  return jobs;
}

// fn(i) for i in [0, count), in parallel; exceptions are rethrown.
template <typename Fn>
inline void parallel_for_index(size_t count, int jobs, Fn&& fn) {
  jobs = effective_jobs(jobs);
  if (jobs <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  size_t workers = std::min<size_t>(jobs, count);
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// map with deterministic output order
template <typename T, typename Fn>
inline auto parallel_map(const std::vector<T>& items, int jobs, Fn&& fn)
    -> std::vector<decltype(fn(items[0]))> {
  std::vector<decltype(fn(items[0]))> out(items.size());
  parallel_for_index(items.size(), jobs, [&](size_t i) { out[i] = fn(items[i]); });
  return out;
}

}  // namespace finact
