#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace smr {

inline int hardware_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

// Runs work(i) for i in [0, n) across up to `jobs` threads in waves, then
// calls accumulate(i) on the calling thread strictly in index order. The
// accumulation order is 0..n-1 no matter how many jobs are used, so any
// floating-point reduction done in accumulate() is bitwise independent of
// the thread count.
inline void wave_parallel(int n, int jobs,
                          const std::function<void(int)>& work,
                          const std::function<void(int)>& accumulate) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) {
      work(i);
      accumulate(i);
    }
    return;
  }
  for (int start = 0; start < n; start += jobs) {
    const int end = std::min(n, start + jobs);
    std::vector<std::thread> pool;
    pool.reserve(end - start - 1);
    for (int i = start + 1; i < end; ++i)
      pool.emplace_back([&work, i] { work(i); });
    work(start);
    for (auto& t : pool) t.join();
    for (int i = start; i < end; ++i) accumulate(i);
  }
}

// Static-chunk parallel loop for independent work items (each i writes only
// to its own slot). Deterministic because the partition depends only on n.
inline void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(jobs - 1);
  const int chunk = (n + jobs - 1) / jobs;
  for (int t = 1; t < jobs; ++t) {
    const int lo = t * chunk;
    const int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (int i = 0; i < std::min(n, chunk); ++i) fn(i);
  for (auto& t : pool) t.join();
}

}  // namespace smr
