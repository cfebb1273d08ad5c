#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace bjortho {

/// Worker count for batch loops: hardware concurrency, capped by the
/// BJORTHO_THREADS environment variable when set.
inline int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("BJORTHO_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return std::min(hw, 16);
}

/// Static-chunked parallel loop over [0, n). Each index is processed exactly
/// once; callers write results into per-index slots so the outcome does not
/// depend on the worker count.
template <class F>
void parallel_for(int n, F&& body) {
  int workers = std::min(worker_count(), std::max(1, n));
  if (workers <= 1 || n < 32) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    int lo = static_cast<int>(static_cast<long long>(n) * w / workers);
    int hi = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace bjortho
