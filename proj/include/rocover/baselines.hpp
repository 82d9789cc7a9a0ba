#pragma once

#include "rocover/instance.hpp"
#include "rocover/learn_or_cover.hpp"
#include "rocover/rng.hpp"

namespace rocover {

struct GreedyResult {
  std::vector<int> sets;  // in pick order
  double cost = 0.0;
};

// Classic offline greedy: repeatedly buy the set minimizing
// cost / |newly covered|, ties to the lowest set id.
GreedyResult greedy_offline(const SetSystem& sys);

enum class OptMode { kBranchAndBound, kExhaustive };

struct OptLimits {
  long long node_budget = 20'000'000;
  bool force_exhaustive = false;
};

struct OptCertificate {
  std::vector<int> sets;  // sorted ids of a minimum-cost cover
  double cost = 0.0;
  OptMode mode = OptMode::kBranchAndBound;
  bool exact = true;        // false when the node budget ran out
  double lower_bound = 0.0; // proven lower bound (== cost when exact)
  double upper_bound = 0.0; // incumbent cost
  long long nodes = 0;
};

// Provably minimum-cost cover for small instances (m <= 64).
//
// Branch and bound (default): dominated sets (subset members, no cheaper)
// are removed up front; the greedy cover seeds the incumbent; nodes branch
// on the uncovered element with the fewest remaining covering sets (ties to
// the lowest element id, candidate sets in ascending id) and are cut by
// "purchase cost + independent-set lower bound". The lower bound sums
// cheapest-cover costs over a greedily chosen family of uncovered elements
// no two of which share a set. Fully deterministic.
//
// Exhaustive (m <= 25): scans all subsets; among minimum-cost covers returns
// the lexicographically smallest sorted id list.
//
// When the node budget is exhausted the certificate comes back exact=false
// with the best (lower_bound, upper_bound) pair seen.
OptCertificate exact_opt(const SetSystem& sys, OptLimits limits = {});

struct BnFractionalResult {
  std::vector<double> x;  // final fractional weights, monotone over the run
  double expected_rounded_size = 0.0;  // sum_j min(ln(n) * x_j, 1)
};

// Water-filling fractional baseline for unit costs: when an arrival's sets
// hold total weight below 1, raise each of those weights by an equal amount
// until the total is exactly 1. Weights never decrease.
BnFractionalResult bn_fractional(const SetSystem& sys, const ArrivalOrder& order);

struct BnOnlineResult {
  CoverState cover;
  long long rounded_purchases = 0;
  long long patch_purchases = 0;
};

// Feasible rounding of bn_fractional: every set draws one threshold uniform
// in [0,1) up front and is bought the first time min(ln(n) * x_j, 1) exceeds
// it; arrivals left uncovered buy their cheapest covering set.
BnOnlineResult bn_online(const SetSystem& sys, const IncidenceIndex& index,
                         const ArrivalOrder& order, RngStream& rng);

// Buys the cheapest covering set for every uncovered arrival.
CoverState naive_online(const SetSystem& sys, const IncidenceIndex& index,
                        const ArrivalOrder& order);

}  // namespace rocover
