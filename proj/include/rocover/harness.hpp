#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "rocover/baselines.hpp"
#include "rocover/cip.hpp"
#include "rocover/generators.hpp"
#include "rocover/instance.hpp"
#include "rocover/learn_or_cover.hpp"
#include "rocover/rng.hpp"

namespace rocover {

enum class AlgorithmId {
  kLoc,        // sample-then-reweight set cover (general costs)
  kUnitLoc,    // unit-cost single-sample variant
  kSimpleLoc,  // tuple-tracking variant (needs the cover size k)
  kNaive,      // cheapest covering set per uncovered arrival
  kBnOnline,   // rounded water-filling baseline
  kGreedy,     // offline greedy (order-independent reference)
  kCip,        // covering-IP rounds (set systems run through the 0/1 embedding)
};

std::string_view algorithm_name(AlgorithmId id);
AlgorithmId parse_algorithm(std::string_view name);  // throws Error on unknown ids

enum class BetaMode { kKnownOpt, kGuessDouble, kFixed };

struct BetaSpec {
  BetaMode mode = BetaMode::kKnownOpt;
  double value = 0.0;  // fixed mode only
};

// Accepts "known-opt", "guess-double", or "fixed:<value>" with value > 0.
BetaSpec parse_beta_spec(std::string_view text);
std::string beta_spec_name(const BetaSpec& spec);

struct TrialStats {
  std::string algorithm;
  std::string instance;
  int trials = 0;
  double mean = 0.0;
  double std_dev = 0.0;  // sample standard deviation (T - 1 denominator)
  double min = 0.0;
  double max = 0.0;
  std::optional<double> opt;    // reference optimum when one is available
  std::optional<double> ratio;  // mean / opt, only with a reference
  double ci = 0.0;              // 95% half-width: 1.96 * std_dev / sqrt(T)
};

TrialStats compute_stats(std::span<const double> costs, std::optional<double> opt,
                         std::string algorithm, std::string instance);

struct RunConfig {
  AlgorithmId algorithm = AlgorithmId::kLoc;
  BetaSpec beta;
  int trials = 1;
  std::uint64_t seed = 1;
  int threads = 1;
  int simple_k = 0;           // simple-loc: tuple size (required there)
  std::optional<double> opt;  // reference optimum (planted cost, meta, or oracle)
  std::string instance_label = "instance";
  LocOptions loc_opts;
  UnitLocOptions unit_opts;
  CipOptions cip_opts;
  GdOptions gd_opts;
};

struct TrialsResult {
  std::vector<double> costs;  // per-trial cost, in trial-index order
  TrialStats stats;
};

// T independent random-order runs. Trial i uses a substream derived from
// (seed, i) for both its arrival order and its algorithm randomness, so the
// result is byte-identical for every thread count and completion order.
// known-opt beta mode requires cfg.opt; guess-double is set-cover only.
TrialsResult run_trials(const SetSystem& sys, const RunConfig& cfg);

// Covering-IP trials (algorithm must be kCip); rows arrive in random order.
TrialsResult run_trials(const CipInstance& inst, const RunConfig& cfg);

enum class BatchedAlgorithm {
  kLocPerElement,   // feed the flattened element stream to the set-cover rounds
  kGreedyPerBatch,  // settle each batch greedily by cost per newly covered batch element
  kNaive,           // cheapest covering set per uncovered element
};

std::string_view batched_algorithm_name(BatchedAlgorithm alg);
BatchedAlgorithm parse_batched_algorithm(std::string_view name);

double harmonic(int n);  // H_n = 1 + 1/2 + ... + 1/n

// (1/2) * inner_opt * H_batches: the cost the nested-batch construction
// forces on the batched online algorithms in expectation.
double batched_bound(double inner_opt, int batch_count);

// One batched run: batches arrive in uniform random order, elements within a
// batch in ascending id order, and each batch is fully covered before the
// next arrives. Purchases count globally (a set bought for one batch covers
// its members everywhere). Returns the total cost.
double batched_single(const BatchedInstance& inst, const IncidenceIndex& index,
                      BatchedAlgorithm alg, double beta, RngStream& rng);

// T-trial batched wrapper with the same substream-per-trial discipline.
// kLocPerElement resolves beta from cfg (known-opt or fixed).
TrialsResult run_batched_trials(const BatchedInstance& inst, BatchedAlgorithm alg,
                                const RunConfig& cfg);

// --- CSV schemas (every emitted CSV parses back losslessly) ---

// Header algorithm,instance,trials,mean,std,min,max,opt,ratio,ci; opt and
// ratio are empty fields when no reference optimum is available.
std::string stats_csv(std::span<const TrialStats> stats);
std::vector<TrialStats> parse_stats_csv(std::string_view text);

// Header trial,cost with 1-based trial ids.
std::string raw_costs_csv(std::span<const double> costs);
std::vector<double> parse_raw_costs_csv(std::string_view text);

struct SweepRow {
  std::string family;
  int n = 0;
  int m = 0;
  int k = 0;
  std::string algorithm;
  int trials = 0;
  double mean_cost = 0.0;
  double std_dev = 0.0;
  std::optional<double> opt;
  std::optional<double> ratio;
  double ci = 0.0;
};

struct SweepConfig {
  std::vector<GenSpec> points;
  std::vector<AlgorithmId> algorithms;
  BetaSpec beta;
  int trials = 20;
  std::uint64_t seed = 1;
  int threads = 1;
  int simple_k = 0;
};

// Generates every point, runs every algorithm on it, one row per
// (point, algorithm) in grid order. Batched instances are swept over their
// flat element stream (fully random order); the optimum reference comes from
// the generator metadata when present.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

// Header family,n,m,k,algorithm,trials,mean_cost,std,opt,ratio,ci.
std::string sweep_csv(std::span<const SweepRow> rows);
std::vector<SweepRow> parse_sweep_csv(std::string_view text);

// The "opt" entry of a generator meta sidecar, when present and numeric.
std::optional<double> meta_opt(const MetaJson& meta);

}  // namespace rocover
