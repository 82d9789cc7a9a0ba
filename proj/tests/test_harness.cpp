#include <doctest.h>

#include <cmath>
#include <vector>

#include "rocover/baselines.hpp"
#include "rocover/harness.hpp"
#include "test_util.hpp"

using namespace rocover;

TEST_CASE("algorithm and beta names round trip") {
  for (auto id : {AlgorithmId::kLoc, AlgorithmId::kUnitLoc, AlgorithmId::kSimpleLoc,
                  AlgorithmId::kNaive, AlgorithmId::kBnOnline, AlgorithmId::kGreedy,
                  AlgorithmId::kCip}) {
    CHECK(parse_algorithm(algorithm_name(id)) == id);
  }
  CHECK_THROWS_AS(parse_algorithm("quantum"), Error);

  CHECK(parse_beta_spec("known-opt").mode == BetaMode::kKnownOpt);
  CHECK(parse_beta_spec("guess-double").mode == BetaMode::kGuessDouble);
  auto fixed = parse_beta_spec("fixed:2.5");
  CHECK(fixed.mode == BetaMode::kFixed);
  CHECK(fixed.value == 2.5);
  CHECK(beta_spec_name(fixed) == "fixed:2.5");
  CHECK_THROWS_AS(parse_beta_spec("fixed:-1"), Error);
  CHECK_THROWS_AS(parse_beta_spec("fixed:zzz"), Error);
  CHECK_THROWS_AS(parse_beta_spec("sideways"), Error);

  for (auto alg : {BatchedAlgorithm::kLocPerElement, BatchedAlgorithm::kGreedyPerBatch,
                   BatchedAlgorithm::kNaive}) {
    CHECK(parse_batched_algorithm(batched_algorithm_name(alg)) == alg);
  }
  CHECK_THROWS_AS(parse_batched_algorithm("mystery"), Error);
}

TEST_CASE("compute_stats frozen values") {
  std::vector<double> costs = {1.0, 2.0, 3.0};
  auto stats = compute_stats(costs, 2.0, "naive", "demo");
  CHECK(stats.trials == 3);
  CHECK(stats.mean == doctest::Approx(2.0));
  CHECK(stats.std_dev == doctest::Approx(1.0));
  CHECK(stats.min == 1.0);
  CHECK(stats.max == 3.0);
  REQUIRE(stats.opt.has_value());
  CHECK(*stats.opt == 2.0);
  REQUIRE(stats.ratio.has_value());
  CHECK(*stats.ratio == doctest::Approx(1.0));
  CHECK(stats.ci == doctest::Approx(1.96 / std::sqrt(3.0)));

  std::vector<double> one = {5.0};
  auto single = compute_stats(one, std::nullopt, "naive", "demo");
  CHECK(single.std_dev == 0.0);
  CHECK(single.ci == 0.0);
  CHECK_FALSE(single.opt.has_value());
  CHECK_FALSE(single.ratio.has_value());

  std::vector<double> empty;
  CHECK_THROWS_AS(compute_stats(empty, std::nullopt, "naive", "demo"), Error);
}

TEST_CASE("naive trials on the reference instance") {
  auto sys = testutil::make_t1();
  RunConfig cfg;
  cfg.algorithm = AlgorithmId::kNaive;
  cfg.trials = 10;
  cfg.seed = 3;
  cfg.opt = 2.0;
  auto result = run_trials(sys, cfg);
  REQUIRE(result.costs.size() == 10);
  for (double c : result.costs) CHECK(c == 2.0);
  CHECK(result.stats.mean == 2.0);
  CHECK(result.stats.std_dev == 0.0);
  CHECK(*result.stats.ratio == doctest::Approx(1.0));
}

TEST_CASE("trial results are independent of thread count") {
  auto planted = gen_planted(PlantedSpec{40, 30, 5, 0.2, 0.3}, 61);
  RunConfig cfg;
  cfg.algorithm = AlgorithmId::kLoc;
  cfg.beta = parse_beta_spec("known-opt");
  cfg.trials = 24;
  cfg.seed = 7;
  cfg.opt = planted.planted_cost;

  cfg.threads = 1;
  auto serial = run_trials(planted.sys, cfg);
  cfg.threads = 4;
  auto parallel = run_trials(planted.sys, cfg);
  CHECK(serial.costs == parallel.costs);

  std::vector<TrialStats> rows = {serial.stats};
  std::vector<TrialStats> rows2 = {parallel.stats};
  CHECK(stats_csv(rows) == stats_csv(rows2));
}

TEST_CASE("beta modes gate the inputs they need") {
  auto sys = testutil::make_t1();
  RunConfig cfg;
  cfg.algorithm = AlgorithmId::kLoc;
  cfg.beta = parse_beta_spec("known-opt");
  cfg.trials = 2;
  // known-opt without a reference optimum is an error.
  CHECK_THROWS_AS(run_trials(sys, cfg), Error);

  cfg.beta = parse_beta_spec("fixed:2");
  auto fixed = run_trials(sys, cfg);
  for (double c : fixed.costs) CHECK(c >= 2.0);

  cfg.beta = parse_beta_spec("guess-double");
  auto gd = run_trials(sys, cfg);
  for (double c : gd.costs) CHECK(c >= 2.0);

  // guess-double outside the set-cover rounds is rejected.
  cfg.algorithm = AlgorithmId::kCip;
  CHECK_THROWS_AS(run_trials(sys, cfg), Error);

  // simple-loc needs its tuple size.
  cfg.algorithm = AlgorithmId::kSimpleLoc;
  cfg.beta = parse_beta_spec("fixed:2");
  auto unit = sys;
  unit.costs = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS(run_trials(unit, cfg), Error);
  cfg.simple_k = 1;
  auto simple = run_trials(unit, cfg);
  for (double c : simple.costs) CHECK(c >= 2.0);
}

TEST_CASE("set-cover and embedded covering-IP rounds agree in mean") {
  auto planted = gen_planted(PlantedSpec{24, 16, 4, 0.2, 0.0}, 67);
  RunConfig cfg;
  cfg.beta = parse_beta_spec("known-opt");
  cfg.opt = planted.planted_cost;
  cfg.trials = 2000;
  cfg.seed = 11;
  cfg.threads = 4;

  cfg.algorithm = AlgorithmId::kLoc;
  auto loc = run_trials(planted.sys, cfg);
  cfg.algorithm = AlgorithmId::kCip;
  auto cip = run_trials(planted.sys, cfg);

  // On a unit-cost 0/1 instance the covering-IP rounds reduce to the
  // set-cover rounds, so the two cost distributions coincide and the means
  // must sit within Monte Carlo noise of each other.
  double se = std::hypot(loc.stats.std_dev, cip.stats.std_dev) / std::sqrt(2000.0);
  CHECK(std::abs(loc.stats.mean - cip.stats.mean) <= 3.0 * se);
}

TEST_CASE("per-trial costs never beat the oracle") {
  auto sys = testutil::make_t1();
  auto opt_cost = exact_opt(sys).cost;
  for (auto id :
       {AlgorithmId::kLoc, AlgorithmId::kNaive, AlgorithmId::kGreedy, AlgorithmId::kCip}) {
    RunConfig cfg;
    cfg.algorithm = id;
    cfg.beta = parse_beta_spec("fixed:2");
    cfg.trials = 50;
    cfg.seed = 13;
    cfg.opt = opt_cost;
    auto result = run_trials(sys, cfg);
    for (double c : result.costs) CHECK(c >= opt_cost - 1e-9);
  }

  // The threshold-rounding baseline insists on unit costs, so it gets a
  // unit-cost copy with its own oracle value.
  auto unit = sys;
  unit.costs.assign(static_cast<std::size_t>(unit.m), 1.0);
  auto unit_opt = exact_opt(unit).cost;
  RunConfig cfg;
  cfg.algorithm = AlgorithmId::kBnOnline;
  cfg.trials = 50;
  cfg.seed = 13;
  cfg.opt = unit_opt;
  auto result = run_trials(unit, cfg);
  for (double c : result.costs) CHECK(c >= unit_opt - 1e-9);
}

TEST_CASE("stats csv round trips optional fields") {
  std::vector<double> costs = {2.0, 4.0};
  std::vector<TrialStats> rows;
  rows.push_back(compute_stats(costs, 2.0, "loc", "demo-a"));
  rows.push_back(compute_stats(costs, std::nullopt, "naive", "demo-b"));
  std::string csv = stats_csv(rows);
  CHECK(csv.rfind("algorithm,instance,trials,mean,std,min,max,opt,ratio,ci\n", 0) == 0);

  auto back = parse_stats_csv(csv);
  REQUIRE(back.size() == 2);
  CHECK(back[0].algorithm == "loc");
  CHECK(back[0].instance == "demo-a");
  CHECK(back[0].trials == 2);
  CHECK(back[0].mean == rows[0].mean);
  REQUIRE(back[0].opt.has_value());
  CHECK(*back[0].opt == 2.0);
  CHECK_FALSE(back[1].opt.has_value());
  CHECK_FALSE(back[1].ratio.has_value());
  CHECK(stats_csv(back) == csv);

  CHECK_THROWS_AS(parse_stats_csv("bogus\n"), Error);
}

TEST_CASE("raw cost csv round trips") {
  std::vector<double> costs = {1.5, 2.0, 2.25};
  std::string csv = raw_costs_csv(costs);
  CHECK(csv.rfind("trial,cost\n", 0) == 0);
  CHECK(parse_raw_costs_csv(csv) == costs);
  CHECK_THROWS_AS(parse_raw_costs_csv("trial,cost\n2,1.5\n"), Error);  // ids must start at 1
}

TEST_CASE("csv labels refuse separators") {
  std::vector<double> costs = {1.0};
  auto stats = compute_stats(costs, std::nullopt, "algo,with,commas", "demo");
  std::vector<TrialStats> rows = {stats};
  CHECK_THROWS_AS(stats_csv(rows), Error);
}

TEST_CASE("harmonic numbers and the batched target") {
  CHECK(harmonic(1) == 1.0);
  CHECK(harmonic(4) == doctest::Approx(25.0 / 12.0));
  CHECK(batched_bound(4.0, 64) == doctest::Approx(0.5 * 4.0 * harmonic(64)));
}

TEST_CASE("single-batch runs pay at least the offline optimum") {
  auto inner = gen_planted(PlantedSpec{6, 5, 2, 0.3, 0.0}, 71);
  auto prod = gen_product_batched(1, inner.sys, 72);
  auto opt_cost = exact_opt(prod.base).cost;

  for (auto alg : {BatchedAlgorithm::kLocPerElement, BatchedAlgorithm::kGreedyPerBatch,
                   BatchedAlgorithm::kNaive}) {
    RunConfig cfg;
    cfg.beta = parse_beta_spec("fixed:4");
    cfg.trials = 20;
    cfg.seed = 17;
    auto result = run_batched_trials(prod, alg, cfg);
    for (double c : result.costs) CHECK(c >= opt_cost - 1e-9);
  }
}

TEST_CASE("batched trials are deterministic per seed") {
  auto inner = gen_planted(PlantedSpec{4, 3, 2, 0.5, 0.0}, 73);
  auto prod = gen_product_batched(6, inner.sys, 74);
  RunConfig cfg;
  cfg.beta = parse_beta_spec("fixed:2");
  cfg.trials = 8;
  cfg.seed = 19;
  auto a = run_batched_trials(prod, BatchedAlgorithm::kLocPerElement, cfg);
  auto b = run_batched_trials(prod, BatchedAlgorithm::kLocPerElement, cfg);
  CHECK(a.costs == b.costs);

  cfg.threads = 3;
  auto c = run_batched_trials(prod, BatchedAlgorithm::kGreedyPerBatch, cfg);
  cfg.threads = 1;
  auto d = run_batched_trials(prod, BatchedAlgorithm::kGreedyPerBatch, cfg);
  CHECK(c.costs == d.costs);
}

TEST_CASE("sweep produces one row per point and algorithm") {
  SweepConfig cfg;
  GenSpec point;
  point.family = "planted";
  point.seed = 81;
  point.n = 16;
  point.m = 12;
  point.k = 3;
  point.p_extra = 0.2;
  cfg.points = {point};
  cfg.algorithms = {AlgorithmId::kLoc, AlgorithmId::kNaive, AlgorithmId::kGreedy};
  cfg.beta = parse_beta_spec("known-opt");
  cfg.trials = 10;
  cfg.seed = 23;

  auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(row.family == "planted");
    CHECK(row.n == 16);
    CHECK(row.m == 12);
    CHECK(row.k == 3);
    CHECK(row.trials == 10);
    REQUIRE(row.opt.has_value());
    CHECK(*row.opt == 3.0);  // planted cover of three unit sets
    CHECK(row.mean_cost >= *row.opt - 1e-9);
  }
  CHECK(rows[0].algorithm == "loc");
  CHECK(rows[1].algorithm == "naive");
  CHECK(rows[2].algorithm == "greedy");

  std::string csv = sweep_csv(rows);
  CHECK(csv.rfind("family,n,m,k,algorithm,trials,mean_cost,std,opt,ratio,ci\n", 0) == 0);
  auto back = parse_sweep_csv(csv);
  REQUIRE(back.size() == rows.size());
  CHECK(sweep_csv(back) == csv);
}

TEST_CASE("meta_opt reads only numeric opt entries") {
  MetaJson meta;
  CHECK_FALSE(meta_opt(meta).has_value());
  meta["opt"] = "not a number";
  CHECK_FALSE(meta_opt(meta).has_value());
  meta["opt"] = 2.5;
  REQUIRE(meta_opt(meta).has_value());
  CHECK(*meta_opt(meta) == 2.5);
}
