#include <doctest.h>

#include <cmath>
#include <vector>

#include "rocover/baselines.hpp"
#include "rocover/generators.hpp"
#include "rocover/rng.hpp"
#include "test_util.hpp"

using namespace rocover;

namespace {

SetSystem disjoint_singletons(int n) {
  SetSystem sys;
  sys.n = n;
  sys.m = n;
  sys.costs.assign(static_cast<std::size_t>(n), 1.0);
  for (int i = 0; i < n; ++i) sys.members.push_back({i});
  return sys;
}

SetSystem random_small(RngStream& rng, int n, int m) {
  SetSystem sys;
  sys.n = n;
  sys.m = m;
  sys.members.resize(static_cast<std::size_t>(m));
  sys.costs.resize(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    sys.costs[static_cast<std::size_t>(j)] = 0.5 + 2.0 * rng.uniform01();
    for (int v = 0; v < n; ++v) {
      if (rng.bernoulli(0.4)) sys.members[static_cast<std::size_t>(j)].push_back(v);
    }
  }
  // Guarantee coverability: element v joins set v mod m.
  for (int v = 0; v < n; ++v) {
    auto& mem = sys.members[static_cast<std::size_t>(v % m)];
    bool present = false;
    for (int e : mem) present = present || e == v;
    if (!present) {
      mem.push_back(v);
      std::sort(mem.begin(), mem.end());
    }
  }
  return sys;
}

}  // namespace

TEST_CASE("greedy frozen trace on the reference instance") {
  auto result = greedy_offline(testutil::make_t1());
  // Sets 0 and 1 tie at ratio 1/2 (set 2 sits at 2/3); lowest id wins, and
  // the second pick covers the rest.
  CHECK(result.sets == std::vector<int>{0, 1});
  CHECK(result.cost == 2.0);
}

TEST_CASE("greedy edge cases") {
  SetSystem full;
  full.n = 3;
  full.m = 1;
  full.members = {{0, 1, 2}};
  full.costs = {5.0};
  auto r = greedy_offline(full);
  CHECK(r.sets == std::vector<int>{0});
  CHECK(r.cost == 5.0);

  SetSystem empty;
  empty.n = 0;
  empty.m = 0;
  auto e = greedy_offline(empty);
  CHECK(e.sets.empty());
  CHECK(e.cost == 0.0);

  SetSystem bad;
  bad.n = 2;
  bad.m = 1;
  bad.members = {{0}};
  bad.costs = {1.0};
  CHECK_THROWS_AS(greedy_offline(bad), Error);
}

TEST_CASE("exact_opt frozen certificate on the reference instance") {
  auto cert = exact_opt(testutil::make_t1());
  CHECK(cert.cost == 2.0);
  CHECK(cert.sets == std::vector<int>{0, 1});
  CHECK(cert.exact);
  CHECK(cert.lower_bound == doctest::Approx(2.0));
  CHECK(cert.upper_bound == doctest::Approx(2.0));

  auto exhaustive = exact_opt(testutil::make_t1(), OptLimits{.force_exhaustive = true});
  CHECK(exhaustive.cost == 2.0);
  CHECK(exhaustive.sets == std::vector<int>{0, 1});
  CHECK(exhaustive.mode == OptMode::kExhaustive);
}

TEST_CASE("exact_opt forced structures") {
  auto singles = disjoint_singletons(6);
  auto cert = exact_opt(singles);
  CHECK(cert.cost == 6.0);
  CHECK(cert.sets.size() == 6);

  SetSystem big;
  big.n = 1;
  big.m = 65;
  big.members.assign(65, {0});
  big.costs.assign(65, 1.0);
  CHECK_THROWS_AS(exact_opt(big), Error);
}

TEST_CASE("branch and bound agrees with exhaustive search") {
  RngStream rng(71);
  for (int it = 0; it < 30; ++it) {
    auto sys = random_small(rng, 8 + static_cast<int>(rng.uniform_index(5)),
                            6 + static_cast<int>(rng.uniform_index(6)));
    auto bb = exact_opt(sys);
    auto ex = exact_opt(sys, OptLimits{.force_exhaustive = true});
    REQUIRE(bb.exact);
    CHECK(bb.cost == doctest::Approx(ex.cost).epsilon(1e-12));
    // Both certificates actually cover.
    std::vector<char> covered(static_cast<std::size_t>(sys.n), 0);
    for (int j : bb.sets) {
      for (int e : sys.members[static_cast<std::size_t>(j)]) {
        covered[static_cast<std::size_t>(e)] = 1;
      }
    }
    for (char c : covered) CHECK(c == 1);
  }
}

TEST_CASE("exact_opt never exceeds the planted certificate") {
  RngStream rng(73);
  for (int it = 0; it < 5; ++it) {
    auto planted =
        gen_planted(PlantedSpec{30, 12, 3, 0.1, 0.3}, 100 + static_cast<std::uint64_t>(it));
    auto cert = exact_opt(planted.sys);
    CHECK(cert.cost <= planted.planted_cost + 1e-12);
  }
}

TEST_CASE("water-filling baseline frozen traces") {
  // Two nested sets {1} and {0,1} (identity labels).
  std::vector<int> labels = {0, 1};
  auto sys = upper_triangular_with_labels(2, labels);
  REQUIRE(sys.m == 2);

  auto forward = bn_fractional(sys, {0, 1});
  CHECK(forward.x[0] == doctest::Approx(0.0));
  CHECK(forward.x[1] == doctest::Approx(1.0));
  CHECK(forward.expected_rounded_size == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  auto backward = bn_fractional(sys, {1, 0});
  CHECK(backward.x[0] == doctest::Approx(0.5));
  CHECK(backward.x[1] == doctest::Approx(1.0));
  CHECK(backward.expected_rounded_size ==
        doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("water-filling matches an independent simulation") {
  SetSystem one;
  one.n = 1;
  one.m = 1;
  one.members = {{0}};
  one.costs = {1.0};
  auto r = bn_fractional(one, {0});
  CHECK(r.x[0] == doctest::Approx(1.0));
  // ln(1) = 0: the closed form gives zero expected size for n = 1.
  CHECK(r.expected_rounded_size == 0.0);

  auto sys = gen_upper_triangular(16, 5);
  auto index = build_incidence(sys);
  auto order = RngStream(6).shuffle(16);

  // Replay the water-fill by hand: raise an arrival's sets by an equal
  // amount whenever their total weight is below 1. Weights never decrease.
  std::vector<double> x(static_cast<std::size_t>(sys.m), 0.0);
  for (int v : order) {
    const auto& sets = index.sets_of[static_cast<std::size_t>(v)];
    double mass = 0.0;
    for (int j : sets) mass += x[static_cast<std::size_t>(j)];
    if (mass < 1.0) {
      double raise = (1.0 - mass) / static_cast<double>(sets.size());
      for (int j : sets) x[static_cast<std::size_t>(j)] += raise;
    }
  }
  auto full = bn_fractional(sys, order);
  double expected_size = 0.0;
  for (int j = 0; j < sys.m; ++j) {
    CHECK(full.x[static_cast<std::size_t>(j)] ==
          doctest::Approx(x[static_cast<std::size_t>(j)]).epsilon(1e-12));
    expected_size += std::min(std::log(16.0) * x[static_cast<std::size_t>(j)], 1.0);
  }
  CHECK(full.expected_rounded_size == doctest::Approx(expected_size).epsilon(1e-12));
}

TEST_CASE("rounded baseline is feasible and accounts its purchases") {
  auto sys = gen_upper_triangular(32, 9);
  auto index = build_incidence(sys);
  auto order = RngStream(10).shuffle(32);
  RngStream rng(11);
  auto result = bn_online(sys, index, order, rng);
  CHECK(result.cover.uncovered_count == 0);
  CHECK(result.rounded_purchases + result.patch_purchases ==
        static_cast<long long>(result.cover.purchased.size()));

  SetSystem one;
  one.n = 1;
  one.m = 1;
  one.members = {{0}};
  one.costs = {1.0};
  auto oindex = build_incidence(one);
  RngStream orng(12);
  auto single = bn_online(one, oindex, {0}, orng);
  CHECK(single.cover.total_cost == 1.0);
}

TEST_CASE("naive baseline frozen values") {
  auto sys = testutil::make_t1();
  auto index = build_incidence(sys);
  // Every order pays exactly 2 on the reference instance.
  std::vector<ArrivalOrder> orders = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& order : orders) {
    auto cover = naive_online(sys, index, order);
    CHECK(cover.total_cost == 2.0);
    CHECK(cover.uncovered_count == 0);
  }

  auto singles = disjoint_singletons(5);
  auto sindex = build_incidence(singles);
  auto cover = naive_online(singles, sindex, testutil::identity_order(5));
  CHECK(cover.total_cost == 5.0);
}

TEST_CASE("greedy respects the harmonic bound against the oracle") {
  RngStream rng(77);
  for (int it = 0; it < 20; ++it) {
    auto sys = random_small(rng, 10, 8);
    auto cert = exact_opt(sys);
    REQUIRE(cert.exact);
    auto greedy = greedy_offline(sys);
    CHECK(greedy.cost <= (1.0 + std::log(static_cast<double>(sys.n))) * cert.cost + 1e-9);
    CHECK(greedy.cost >= cert.cost - 1e-12);
  }
}
