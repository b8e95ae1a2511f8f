#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

namespace rancm {

inline std::uint64_t mono_ns() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now().time_since_epoch())
          .count());
}

#if defined(__GNUC__) || defined(__clang__)
template <typename T>
inline void do_not_optimize(const T& value) {
  asm volatile("" : : "g"(value) : "memory");
}
#else
template <typename T>
inline void do_not_optimize(const T&) {}
#endif

struct BenchStats {
  double mean_ns = 0.0;
  double se_ns = 0.0;
  double median_ns = 0.0;
  int trials = 0;
};

// Runs `fn` (one full pass over the workload) `trials` times after a warm-up
// pass and reports per-item wall-clock, where `items` is the workload size.
template <typename Fn>
BenchStats bench_per_item(Fn&& fn, std::size_t items, int trials,
                          int warmup_passes = 1) {
  for (int i = 0; i < warmup_passes; ++i) fn();

  std::vector<double> per_item(trials);
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t before = mono_ns();
    fn();
    const std::uint64_t after = mono_ns();
    per_item[t] = static_cast<double>(after - before) /
                  static_cast<double>(items);
  }

  BenchStats stats;
  stats.trials = trials;
  double sum = 0.0;
  for (double v : per_item) sum += v;
  stats.mean_ns = sum / trials;
  double var = 0.0;
  for (double v : per_item) var += (v - stats.mean_ns) * (v - stats.mean_ns);
  stats.se_ns = trials > 1 ? std::sqrt(var / (trials - 1) / trials) : 0.0;
  std::sort(per_item.begin(), per_item.end());
  stats.median_ns = per_item[per_item.size() / 2];
  return stats;
}

}  // namespace rancm
