#pragma once

// Target-parallel loops. Each index is computed independently with a fixed
// accumulation order, so results do not depend on the thread count.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rieszkit {

struct ExecPolicy {
  int threads = 1;  // 1 = deterministic single lane
};

template <class Fn>
void parallel_for(std::size_t count, const ExecPolicy& pol, Fn&& fn) {
  const int t = std::max(1, pol.threads);
  if (t == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex mu;
  const std::size_t chunk = (count + static_cast<std::size_t>(t) - 1) / static_cast<std::size_t>(t);
  for (int w = 0; w < t; ++w) {
    const std::size_t lo = static_cast<std::size_t>(w) * chunk, hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace rieszkit
