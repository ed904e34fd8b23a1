#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, counter), so parallel path evaluation is reproducible
// independent of scheduling, plus a fixed-order pairwise reduction for
// bitwise-stable Monte Carlo sums.

namespace forage {

/// Stateless mixing of a 64-bit word (splitmix64 finalizer).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// One independent stream per (seed, stream id); draws are indexed by an
/// internal counter.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : base_(mix64(mix64(seed) ^ (stream * 0xd1342543de82ef95ULL + 1))) {}

  std::uint64_t next_u64() { return mix64(base_ ^ counter_++); }

  /// Uniform draw in (0,1); never returns 0 or 1.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Exponential draw with the given rate (mean 1/rate).
  double exponential(double rate) { return -std::log(uniform()) / rate; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

/// Sum with a fixed-shape pairwise reduction tree; the result depends only
/// on the element order, never on thread scheduling.
inline double pairwise_sum(const std::vector<double>& values,
                           std::size_t begin, std::size_t end) {
  const std::size_t n = end - begin;
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += values[i];
    return s;
  }
  const std::size_t mid = begin + n / 2;
  return pairwise_sum(values, begin, mid) + pairwise_sum(values, mid, end);
}

inline double pairwise_sum(const std::vector<double>& values) {
  return pairwise_sum(values, 0, values.size());
}

}  // namespace forage
