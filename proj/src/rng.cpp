#include "rocover/rng.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rocover {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream RngStream::derive(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t h = mix64(state_ + kGolden);
  h = mix64(h ^ (a + kGolden));
  h = mix64(h ^ (b + kGolden));
  return RngStream(h);
}

std::uint64_t RngStream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
  // Lemire's multiply-reject method: exactly uniform over [0, n).
  std::uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < n) {
    std::uint64_t threshold = (0 - n) % n;
    while (lo < threshold) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * n;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

bool RngStream::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("bernoulli: p must be in [0, 1]");
  }
  return uniform01() < p;
}

std::size_t RngStream::weighted_choice(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || std::isinf(w)) {
      throw std::invalid_argument("weighted_choice: weights must be finite and nonnegative");
    }
    total += w;
  }
  if (!(total > 0.0)) {
    throw std::invalid_argument("weighted_choice: total weight must be positive");
  }
  double u = uniform01() * total;
  double acc = 0.0;
  std::size_t last_positive = weights.size();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) {
      acc += weights[i];
      if (u < acc) return i;
      last_positive = i;
    }
  }
  // Rounding pushed u past the final prefix sum; the last positive weight owns
  // the residual mass.
  return last_positive;
}

std::vector<int> RngStream::shuffle(int n) {
  if (n < 0) throw std::invalid_argument("shuffle: n must be nonnegative");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    auto j = static_cast<int>(uniform_index(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

}  // namespace rocover
