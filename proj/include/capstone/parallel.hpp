#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace capstone {

// Thread count resolution: explicit request, else CAPSTONE_GAME_THREADS,
// else 1. The engine stays deterministic at any count.
inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CAPSTONE_GAME_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

// Runs fn(i) for i in [0, n) over contiguous index blocks. Every element is
// independent, so partitioning cannot change results.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  if (n <= 0) return;
  if (threads <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const int workers = std::min(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int begin = static_cast<int>(static_cast<long long>(n) * w / workers);
    const int end = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
    pool.emplace_back([begin, end, &fn]() {
      for (int i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Index-ordered argmax: strictly higher score wins, ties go to the lower
// index. Scores are computed independently per index, so the reduction is
// identical for any partitioning.
template <typename Score>
std::pair<int, double> parallel_argmax(int n, int threads, Score&& score) {
  std::vector<double> values(static_cast<std::size_t>(n));
  parallel_for(n, threads, [&](int i) { values[static_cast<std::size_t>(i)] = score(i); });
  int best = 0;
  for (int i = 1; i < n; ++i) {
    if (values[static_cast<std::size_t>(i)] > values[static_cast<std::size_t>(best)]) best = i;
  }
  return {best, values[static_cast<std::size_t>(best)]};
}

}  // namespace capstone
