#pragma once

#include <functional>
#include <limits>
#include <numbers>

#include "rocover/instance.hpp"
#include "rocover/kernel.hpp"
#include "rocover/learn_or_cover.hpp"
#include "rocover/rng.hpp"

namespace rocover {

// A round acts only when the arriving row's deficit exceeds this threshold,
// 1 / (e - 1). Tripling an all-rows-arrived solution therefore makes every
// row value at least 3 * (1 - threshold) >= 1.
inline constexpr double kDeficitThreshold = 1.0 / (std::numbers::e - 1.0);

// Cap on a single sampled purchase count, applied before flooring.
inline constexpr double kSampleClamp = 1e9;

struct CipOptions {
  // Size the backup purchase by the deficit remaining after this round's
  // sampled purchases instead of the pre-round deficit.
  bool tight_backup = false;
};

struct CipSolution {
  explicit CipSolution(int m) : z(static_cast<std::size_t>(m), 0) {}

  std::vector<long long> z;  // monotone nondecreasing over rounds
  double total_cost = 0.0;
  long long rounds_acted = 0;
};

// Same initialization as the set-cover weights: uniform budget over
// affordable columns.
FractionalState cip_init(std::span<const double> costs, double beta);

// Random-order covering-IP rounds. On arrival of row i with pre-round
// deficit d:
//   - if d <= kDeficitThreshold, do nothing;
//   - otherwise with kappa = d * min_k costs[k] / a_ik, buy floor+Bernoulli
//     of kappa * x_j / beta copies of every column, multiply x_j by
//     exp(kappa * a_ij / costs[j]) when <a_i, x> < d (renormalizing), and
//     buy ceil(d / a_ik*) copies of the best-rate column k*.
class CipRunner {
 public:
  CipRunner(const CipInstance& inst, double beta, CipOptions opts = {});

  RoundRecord step(int round, int row, CipSolution& sol, RngStream& rng);

  const FractionalState& state() const { return state_; }
  double beta() const { return state_.beta; }

 private:
  const CipInstance* inst_;
  CipOptions opts_;
  FractionalState state_;
};

struct CipRunView {
  const RoundRecord& record;
  const FractionalState& state;
  const CipSolution& sol;
};
using CipRoundObserver = std::function<void(const CipRunView&)>;

struct CipRunResult {
  CipSolution sol;
  std::vector<RoundRecord> trace;
};

CipRunResult cip_run(const CipInstance& inst, const ArrivalOrder& order, double beta,
                     RngStream& rng, CipOptions opts = {},
                     const CipRoundObserver* observer = nullptr);

// The deterministic 3x blow-up that turns "deficit <= threshold on every
// arrived row" into full feasibility.
std::vector<long long> scale_solution(std::span<const long long> z, int factor = 3);

struct FeasibilityReport {
  bool feasible = true;
  double min_margin = std::numeric_limits<double>::infinity();
  std::vector<int> violated_rows;  // rows with <a_i, z> < threshold
};

FeasibilityReport feasibility_check(const CipInstance& inst, std::span<const long long> z,
                                    double threshold = 1.0);

}  // namespace rocover
