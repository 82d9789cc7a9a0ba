#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "rocover/rng.hpp"

using namespace rocover;

TEST_CASE("same seed gives identical sequences, derive is stable") {
  RngStream a(42);
  RngStream b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  RngStream base(7);
  RngStream d1 = base.derive(3, 9);
  RngStream d2 = base.derive(3, 9);
  CHECK(d1.next_u64() == d2.next_u64());
  // derive does not advance the parent.
  RngStream base2(7);
  (void)base2.derive(123, 456);
  RngStream base3(7);
  CHECK(base2.next_u64() == base3.next_u64());
  // distinct keys give distinct streams (overwhelmingly).
  CHECK(base.derive(1, 0).next_u64() != base.derive(2, 0).next_u64());
}

TEST_CASE("uniform01 lies in [0,1)") {
  RngStream rng(1);
  for (int i = 0; i < 10000; ++i) {
    double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform_index respects bounds and rejects zero") {
  RngStream rng(5);
  for (int i = 0; i < 10000; ++i) {
    CHECK(rng.uniform_index(7) < 7);
  }
  CHECK(rng.uniform_index(1) == 0);
  CHECK_THROWS_AS(rng.uniform_index(0), std::invalid_argument);
}

TEST_CASE("bernoulli endpoints are degenerate, mean is calibrated") {
  RngStream rng(11);
  for (int i = 0; i < 100; ++i) {
    CHECK_FALSE(rng.bernoulli(0.0));
    CHECK(rng.bernoulli(1.0));
  }
  int hits = 0;
  const int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) hits += rng.bernoulli(0.3) ? 1 : 0;
  // 3 sigma for p=0.3 at 1e5 draws is ~0.0043.
  CHECK(std::abs(hits / static_cast<double>(kDraws) - 0.3) < 0.005);
  CHECK_THROWS_AS(rng.bernoulli(1.5), std::invalid_argument);
  CHECK_THROWS_AS(rng.bernoulli(-0.1), std::invalid_argument);
}

TEST_CASE("weighted_choice follows the weights and skips zeros") {
  RngStream rng(13);
  std::vector<double> w = {0.0, 1.0, 3.0};
  std::array<int, 3> counts = {0, 0, 0};
  const int kDraws = 40000;
  for (int i = 0; i < kDraws; ++i) counts[rng.weighted_choice(w)]++;
  CHECK(counts[0] == 0);
  CHECK(std::abs(counts[1] / static_cast<double>(kDraws) - 0.25) < 0.01);
  CHECK(std::abs(counts[2] / static_cast<double>(kDraws) - 0.75) < 0.01);
  std::vector<double> all_zero = {0.0, 0.0};
  CHECK_THROWS_AS(rng.weighted_choice(all_zero), std::invalid_argument);
}

TEST_CASE("shuffle is a permutation and close to uniform") {
  RngStream rng(17);
  auto perm = rng.shuffle(100);
  std::vector<char> seen(100, 0);
  for (int v : perm) {
    REQUIRE(v >= 0);
    REQUIRE(v < 100);
    CHECK_FALSE(seen[static_cast<std::size_t>(v)]);
    seen[static_cast<std::size_t>(v)] = 1;
  }
  CHECK(rng.shuffle(0).empty());

  // Chi-square over the 24 permutations of 4 elements, 1e5 draws.
  std::map<std::array<int, 4>, int> counts;
  const int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    auto p = rng.shuffle(4);
    counts[{p[0], p[1], p[2], p[3]}]++;
  }
  CHECK(counts.size() == 24);
  double expected = kDraws / 24.0;
  double chi2 = 0.0;
  for (const auto& [key, c] : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // 23 degrees of freedom: P(chi2 > 50) < 1e-3; seed is fixed so this is
  // deterministic once it passes.
  CHECK(chi2 < 50.0);
}
