#include <doctest.h>

#include <vector>

#include "rocover/instance.hpp"
#include "test_util.hpp"

using namespace rocover;

TEST_CASE("validate accepts the reference instance") {
  CHECK(validate(testutil::make_t1()).empty());
}

TEST_CASE("validate flags structural defects") {
  auto sys = testutil::make_t1();
  sys.members[0] = {0, 5};  // element id out of range
  CHECK_FALSE(validate(sys).empty());

  auto sys2 = testutil::make_t1();
  sys2.members = {{0}, {1}, {0, 1}};  // element 2 uncoverable
  CHECK_FALSE(validate(sys2).empty());

  auto sys3 = testutil::make_t1();
  sys3.costs[1] = 0.0;  // nonpositive cost
  CHECK_FALSE(validate(sys3).empty());

  auto sys4 = testutil::make_t1();
  sys4.members[2] = {1, 0, 2};  // unsorted members
  CHECK_FALSE(validate(sys4).empty());
}

TEST_CASE("validate covers CIP coefficient ranges") {
  CipInstance inst;
  inst.n = 1;
  inst.m = 2;
  inst.rows = {{{0, 0.5}, {1, 1.0}}};
  inst.costs = {1.0, 1.0};
  CHECK(validate(inst).empty());

  inst.rows[0][1].coeff = 1.5;  // out of [0, 1]
  CHECK_FALSE(validate(inst).empty());

  inst.rows[0] = {};  // all-zero row
  CHECK_FALSE(validate(inst).empty());
}

TEST_CASE("validate checks batch partitions") {
  BatchedInstance b;
  b.base = testutil::make_t1();
  b.batches = {{0, 1}, {2}};
  CHECK(validate(b).empty());

  b.batches = {{0, 1}, {1, 2}};  // element 1 twice
  CHECK_FALSE(validate(b).empty());

  b.batches = {{0}, {2}};  // element 1 missing
  CHECK_FALSE(validate(b).empty());
}

TEST_CASE("build_incidence lists the sets of each element") {
  auto sys = testutil::make_t1();
  auto index = build_incidence(sys);
  REQUIRE(index.sets_of.size() == 3);
  CHECK(index.sets_of[0] == std::vector<int>{0, 2});
  CHECK(index.sets_of[1] == std::vector<int>{0, 1, 2});
  CHECK(index.sets_of[2] == std::vector<int>{1, 2});
}

TEST_CASE("cheapest_covering_set frozen values") {
  auto sys = testutil::make_t1();
  auto index = build_incidence(sys);

  auto pick = cheapest_covering_set(index, sys.costs, 2);
  CHECK(pick.set == 1);
  CHECK(pick.kappa == 1.0);

  // Tie between sets 0 and 1 on element 1 breaks to the lowest id.
  auto tie = cheapest_covering_set(index, sys.costs, 1);
  CHECK(tie.set == 0);
  CHECK(tie.kappa == 1.0);

  auto first = cheapest_covering_set(index, sys.costs, 0);
  CHECK(first.set == 0);
  CHECK(first.kappa == 1.0);
}

TEST_CASE("cheapest_covering_set rejects uncoverable elements") {
  SetSystem sys;
  sys.n = 2;
  sys.m = 1;
  sys.members = {{0}};
  sys.costs = {1.0};
  auto index = build_incidence(sys);
  CHECK_THROWS_AS(cheapest_covering_set(index, sys.costs, 1), Error);
}

TEST_CASE("element_kappas matches per-element minima") {
  auto sys = testutil::make_t1();
  auto index = build_incidence(sys);
  auto kappa = element_kappas(sys, index);
  CHECK(kappa == std::vector<double>{1.0, 1.0, 1.0});

  sys.costs = {3.0, 1.0, 2.0};
  auto kappa2 = element_kappas(sys, build_incidence(sys));
  CHECK(kappa2 == std::vector<double>{2.0, 1.0, 1.0});
}

TEST_CASE("row_deficit frozen values") {
  std::vector<CipRowEntry> row = {{0, 0.5}, {1, 0.5}};
  std::vector<long long> z10 = {1, 0};
  CHECK(row_deficit(row, z10) == doctest::Approx(0.5));
  std::vector<long long> z21 = {2, 1};
  CHECK(row_deficit(row, z21) == 0.0);

  std::vector<CipRowEntry> single = {{0, 1.0}};
  std::vector<long long> z0 = {0};
  CHECK(row_deficit(single, z0) == 1.0);
}

TEST_CASE("kappa_cip frozen values") {
  std::vector<double> costs = {1.0, 4.0};
  std::vector<CipRowEntry> row = {{0, 0.5}, {1, 1.0}};

  // rates: 1/0.5 = 2 vs 4/1 = 4; best column 0, kappa = 1 * 2 = 2.
  auto full = kappa_cip(row, 1.0, costs);
  CHECK(full.col == 0);
  CHECK(full.kappa == doctest::Approx(2.0));

  auto zero = kappa_cip(row, 0.0, costs);
  CHECK(zero.col == 0);
  CHECK(zero.kappa == 0.0);

  std::vector<double> one_cost = {1.0};
  std::vector<CipRowEntry> one_row = {{0, 1.0}};
  auto half = kappa_cip(one_row, 0.5, one_cost);
  CHECK(half.col == 0);
  CHECK(half.kappa == doctest::Approx(0.5));

  std::vector<CipRowEntry> empty_row;
  CHECK_THROWS_AS(kappa_cip(empty_row, 1.0, costs), Error);
}

TEST_CASE("set_system_to_cip is the 0/1 embedding") {
  auto sys = testutil::make_t1();
  auto cip = set_system_to_cip(sys);
  CHECK(cip.n == sys.n);
  CHECK(cip.m == sys.m);
  CHECK(cip.costs == sys.costs);
  REQUIRE(cip.rows.size() == 3);
  // Row of element 1 has coefficient 1 in all three columns.
  REQUIRE(cip.rows[1].size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(cip.rows[1][j].col == static_cast<int>(j));
    CHECK(cip.rows[1][j].coeff == 1.0);
  }
  CHECK(validate(cip).empty());
}
