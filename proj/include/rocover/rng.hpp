#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rocover {

// Deterministic PRNG built on the SplitMix64 stepping/finalizing constants.
// The generator is pure 64-bit integer arithmetic, so a given (seed,
// substream path) yields the same draw sequence on every platform.
//
// Substreams: derive(a, b) hashes the current state together with (a, b)
// into a fresh stream. The harness derives one stream per trial, the
// diagnostics probe one per (state, element); this keeps every unit of work
// reproducible independently of scheduling or execution order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  // Independent stream keyed by (a, b). Does not advance this stream.
  RngStream derive(std::uint64_t a, std::uint64_t b = 0) const;

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01();

  // Unbiased uniform draw from {0, ..., n-1}; n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  // p must lie in [0, 1]; bernoulli(0) is always false, bernoulli(1) always true.
  bool bernoulli(double p);

  // Index i with probability weights[i] / sum(weights). Weights must be
  // nonnegative with a positive sum; zero-weight entries are never returned.
  std::size_t weighted_choice(std::span<const double> weights);

  // Unbiased Fisher-Yates permutation of {0, ..., n-1}.
  std::vector<int> shuffle(int n);

 private:
  std::uint64_t state_;
};

}  // namespace rocover
