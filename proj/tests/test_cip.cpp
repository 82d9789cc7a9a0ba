#include <doctest.h>

#include <cmath>
#include <vector>

#include "rocover/cip.hpp"
#include "rocover/kernel.hpp"
#include "rocover/rng.hpp"
#include "test_util.hpp"

using namespace rocover;

namespace {

CipInstance random_cip(int n, int m, RngStream& rng) {
  const double levels[4] = {0.0, 0.25, 0.5, 1.0};
  CipInstance inst;
  inst.n = n;
  inst.m = m;
  inst.costs.resize(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    inst.costs[static_cast<std::size_t>(j)] = 0.5 + 1.5 * rng.uniform01();
  }
  inst.rows.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& row = inst.rows[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) {
      double coeff = levels[rng.uniform_index(4)];
      if (coeff > 0.0) row.push_back(CipRowEntry{j, coeff});
    }
    if (row.empty()) {
      row.push_back(CipRowEntry{static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(m))),
                                1.0});
    }
  }
  return inst;
}

double max_rate_beta(const CipInstance& inst) {
  double beta = 0.0;
  for (const auto& row : inst.rows) {
    beta = std::max(beta, kappa_cip(row, 1.0, inst.costs).kappa);
  }
  return beta;
}

}  // namespace

TEST_CASE("deficit threshold constant") {
  CHECK(kDeficitThreshold == doctest::Approx(1.0 / (std::numbers::e - 1.0)).epsilon(1e-15));
  // Tripling a solution with deficit <= threshold reaches full coverage.
  CHECK(3.0 * (1.0 - kDeficitThreshold) >= 1.0);
}

TEST_CASE("cip_init mirrors the set-cover initialization") {
  std::vector<double> costs = {1.0, 1.0};
  auto state = cip_init(costs, 1.0);
  CHECK(state.x[0] == doctest::Approx(0.5));
  CHECK(state.x[1] == doctest::Approx(0.5));

  std::vector<double> one = {1.0};
  auto s2 = cip_init(one, 3.0);
  CHECK(s2.x[0] == doctest::Approx(3.0));

  std::vector<double> pricey = {9.0};
  CHECK_THROWS_AS(cip_init(pricey, 1.0), Error);
}

TEST_CASE("single-coefficient row hand simulation") {
  // A = [[1]], c = (1), beta = 1: x = (1), deficit 1 > threshold, kappa = 1,
  // y = 1 buys one copy deterministically; the row mass 1 >= deficit skips
  // the reweight; the backup adds ceil(1/1) = 1 more. z = (2), cost 2.
  CipInstance inst;
  inst.n = 1;
  inst.m = 1;
  inst.rows = {{{0, 1.0}}};
  inst.costs = {1.0};
  RngStream rng(3);
  auto result = cip_run(inst, {0}, 1.0, rng, {}, nullptr);
  CHECK(result.sol.z == std::vector<long long>{2});
  CHECK(result.sol.total_cost == 2.0);
  CHECK(result.sol.rounds_acted == 1);
  REQUIRE(result.trace.size() == 1);
  CHECK(result.trace[0].uncovered);
  CHECK(result.trace[0].delta == doctest::Approx(1.0));
  CHECK(result.trace[0].kappa == doctest::Approx(1.0));
  CHECK(result.trace[0].x_cov == doctest::Approx(1.0));
  CHECK(result.trace[0].sampled_cost == doctest::Approx(1.0));
  CHECK(result.trace[0].backup_cost == doctest::Approx(1.0));
}

TEST_CASE("rows below the threshold are skipped") {
  CipInstance inst;
  inst.n = 2;
  inst.m = 1;
  // Row 0 forces z >= 2 (coefficient 0.5); row 1 is then satisfied.
  inst.rows = {{{0, 0.5}}, {{0, 1.0}}};
  inst.costs = {1.0};
  RngStream rng(7);
  auto result = cip_run(inst, {0, 1}, 2.0, rng, {}, nullptr);
  REQUIRE(result.trace.size() == 2);
  CHECK(result.trace[0].uncovered);
  CHECK_FALSE(result.trace[1].uncovered);
  CHECK(result.trace[1].delta == 0.0);
  CHECK(result.trace[1].sampled_cost == 0.0);
  CHECK(result.trace[1].backup_cost == 0.0);
  CHECK(result.sol.rounds_acted == 1);
}

TEST_CASE("acting rounds end with zero deficit and z is monotone") {
  RngStream gen(41);
  for (int it = 0; it < 10; ++it) {
    auto inst = random_cip(24, 16, gen);
    double beta = max_rate_beta(inst);
    RngStream rng = gen.derive(static_cast<std::uint64_t>(it), 1000);
    auto order = rng.shuffle(inst.n);

    std::vector<long long> prev_z(static_cast<std::size_t>(inst.m), 0);
    CipRoundObserver observer = [&](const CipRunView& view) {
      // Monotone z.
      for (std::size_t j = 0; j < view.sol.z.size(); ++j) {
        CHECK(view.sol.z[j] >= prev_z[j]);
      }
      prev_z = view.sol.z;
      // A round that acted clears its row completely.
      if (view.record.uncovered) {
        double d = row_deficit(inst.rows[static_cast<std::size_t>(view.record.id)], view.sol.z);
        CHECK(d == 0.0);
      }
      // Budget invariant on the fractional state.
      double dot = budget_dot(view.state.x, inst.costs);
      CHECK(std::abs(dot - beta) <= 1e-9 * beta);
    };
    auto result = cip_run(inst, order, beta, rng, {}, &observer);

    // Every arrived row sits at deficit <= threshold at the end.
    for (int i = 0; i < inst.n; ++i) {
      double d = row_deficit(inst.rows[static_cast<std::size_t>(i)], result.sol.z);
      CHECK(d <= kDeficitThreshold + 1e-12);
    }
    // Triple the solution: exact feasibility.
    auto z3 = scale_solution(result.sol.z);
    auto report = feasibility_check(inst, z3);
    CHECK(report.feasible);
    CHECK(report.min_margin >= 1.0);
  }
}

TEST_CASE("tight backup never spends more") {
  RngStream gen(43);
  auto inst = random_cip(20, 12, gen);
  double beta = max_rate_beta(inst);
  auto order = RngStream(44).shuffle(inst.n);
  RngStream r1(45), r2(45);
  auto loose = cip_run(inst, order, beta, r1, {}, nullptr);
  auto tight = cip_run(inst, order, beta, r2, CipOptions{true}, nullptr);
  CHECK(tight.sol.total_cost <= loose.sol.total_cost + 1e-9);
  // The tight variant still settles every arrived row.
  for (int i = 0; i < inst.n; ++i) {
    CHECK(row_deficit(inst.rows[static_cast<std::size_t>(i)], tight.sol.z) <=
          kDeficitThreshold + 1e-12);
  }
}

TEST_CASE("empty run and scaling edge cases") {
  CipInstance inst;
  inst.n = 0;
  inst.m = 2;
  inst.costs = {1.0, 1.0};
  RngStream rng(1);
  auto result = cip_run(inst, {}, 1.0, rng, {}, nullptr);
  CHECK(result.sol.total_cost == 0.0);
  CHECK(result.sol.z == std::vector<long long>{0, 0});

  std::vector<long long> z = {1, 0, 2};
  CHECK(scale_solution(z) == std::vector<long long>{3, 0, 6});
  CHECK(scale_solution(z, 2) == std::vector<long long>{2, 0, 4});
}

TEST_CASE("feasibility_check reports exactly the deficient rows") {
  CipInstance inst;
  inst.n = 2;
  inst.m = 2;
  inst.rows = {{{0, 1.0}}, {{1, 0.5}}};
  inst.costs = {1.0, 1.0};

  std::vector<long long> zero = {0, 0};
  auto all_bad = feasibility_check(inst, zero);
  CHECK_FALSE(all_bad.feasible);
  CHECK(all_bad.violated_rows == std::vector<int>{0, 1});
  CHECK(all_bad.min_margin == 0.0);

  std::vector<long long> half = {1, 1};
  auto mixed = feasibility_check(inst, half);
  CHECK_FALSE(mixed.feasible);
  CHECK(mixed.violated_rows == std::vector<int>{1});
  CHECK(mixed.min_margin == 0.5);

  std::vector<long long> good = {1, 2};
  CHECK(feasibility_check(inst, good).feasible);
}

TEST_CASE("cip_run is deterministic under a fixed seed") {
  RngStream gen(47);
  auto inst = random_cip(16, 10, gen);
  double beta = max_rate_beta(inst);
  auto order = RngStream(48).shuffle(inst.n);
  RngStream r1(49), r2(49);
  auto a = cip_run(inst, order, beta, r1, {}, nullptr);
  auto b = cip_run(inst, order, beta, r2, {}, nullptr);
  CHECK(a.sol.z == b.sol.z);
  CHECK(a.sol.total_cost == b.sol.total_cost);
}
