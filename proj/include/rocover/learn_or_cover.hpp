#pragma once

#include <functional>
#include <optional>

#include "rocover/instance.hpp"
#include "rocover/kernel.hpp"
#include "rocover/rng.hpp"

namespace rocover {

enum class PurchaseReason { kSampled, kBackup };

struct Purchase {
  int round = 0;  // 1-based arrival index
  int set = 0;
  PurchaseReason reason = PurchaseReason::kSampled;
  double cost = 0.0;
};

// Purchases and coverage so far. Duplicate purchases of the same set are
// recorded (and charged) each time they happen.
struct CoverState {
  explicit CoverState(int n)
      : covered(static_cast<std::size_t>(n), 0), uncovered_count(n) {}

  std::vector<Purchase> purchased;
  std::vector<char> covered;
  long long uncovered_count = 0;
  double total_cost = 0.0;

  bool is_covered(int v) const { return covered[static_cast<std::size_t>(v)] != 0; }
  void buy(int round, int set, PurchaseReason reason, const SetSystem& sys);
};

// Per-arrival record. For covering IPs x_cov is the row value <a_i, x> and
// delta the pre-round deficit; for set cover delta is identically 1.
struct RoundRecord {
  int round = 0;
  int id = 0;
  bool uncovered = false;
  double kappa = 0.0;
  double x_cov = 0.0;
  double delta = 1.0;
  double sampled_cost = 0.0;
  double backup_cost = 0.0;
};

struct LocOptions {
  // Skip the backup purchase when this round's sampling already covered the
  // arrival. Off by default: the backup buy is unconditional.
  bool skip_covered_backup = false;
};

// Initial weights: uniform budget over the affordable sets,
//   x_j = beta / (costs[j] * m') on {j : costs[j] <= beta},  m' = |support|,
// so <costs, x> == beta. Throws Error when no set is affordable.
FractionalState loc_init(std::span<const double> costs, double beta);

// Random-order set cover via sample-then-reweight. One round per uncovered
// arrival v:
//   1. buy each set independently with probability min(kappa_v * x_j / beta, 1);
//   2. if sum of x over sets containing v is < 1, multiply those sets'
//      weights by exp(kappa_v / cost) and renormalize to <c, x> = beta;
//   3. buy the cheapest set containing v.
class LearnOrCover {
 public:
  LearnOrCover(const SetSystem& sys, const IncidenceIndex& index, double beta,
               LocOptions opts = {});

  // One uncovered-arrival round; v must be uncovered in `cover`.
  RoundRecord step(int round, int v, CoverState& cover, RngStream& rng);

  // Fresh weights at a new budget; coverage and purchases are kept by the
  // caller (guess-and-double phase switch).
  void reset_weights(double beta);

  const FractionalState& state() const { return state_; }
  double beta() const { return state_.beta; }
  double coverage_mass(int v) const;  // sum of x over sets containing v

 private:
  const SetSystem* sys_;
  const IncidenceIndex* index_;
  LocOptions opts_;
  FractionalState state_;
};

// Called after every arrival with the round record, the fractional state
// (empty for algorithms that do not keep one), and the cover so far.
struct RunView {
  const RoundRecord& record;
  const FractionalState& state;
  const CoverState& cover;
};
using RoundObserver = std::function<void(const RunView&)>;

struct RunResult {
  CoverState cover;
  std::vector<RoundRecord> trace;
};

RunResult loc_run(const SetSystem& sys, const IncidenceIndex& index, const ArrivalOrder& order,
                  double beta, RngStream& rng, LocOptions opts = {},
                  const RoundObserver* observer = nullptr);
RunResult loc_run(const SetSystem& sys, const ArrivalOrder& order, double beta, RngStream& rng,
                  LocOptions opts = {});

struct UnitLocOptions {
  // Buy the backup set only when the sampled set left the arrival uncovered.
  bool conditional_backup = false;
};

// Unit-cost specialization: x is a probability distribution over sets
// (uniform at start). Each uncovered arrival samples ONE set from x, then, if
// the arrival's sets hold mass < 1, multiplies their weights by e and
// l1-renormalizes, and finally buys the lowest-id set containing the arrival.
// Requires every cost to be exactly 1.
RunResult unit_loc_run(const SetSystem& sys, const IncidenceIndex& index,
                       const ArrivalOrder& order, RngStream& rng, UnitLocOptions opts = {},
                       const RoundObserver* observer = nullptr);
RunResult unit_loc_run(const SetSystem& sys, const ArrivalOrder& order, RngStream& rng,
                       UnitLocOptions opts = {});

struct SimpleLocResult {
  CoverState cover;
  long long initial_family_size = 0;
  // Tuples still alive at the end, each a sorted k-subset of set ids. The
  // family only ever shrinks, so "never pruned" == "present here".
  std::vector<std::vector<int>> final_family;
};

// Tuple-tracking variant for unit costs: keep every k-subset of sets that
// covers all arrivals seen so far; on an uncovered arrival buy one uniform
// set from one uniform surviving tuple plus the lowest-id covering set.
// Throws Error if C(m, k) exceeds family_cap or the family empties (k too
// small to cover the arrivals).
SimpleLocResult simple_loc_run(const SetSystem& sys, const IncidenceIndex& index,
                               const ArrivalOrder& order, int k, RngStream& rng,
                               long long family_cap = 2'000'000);

struct GdOptions {
  double c_phase = 4.0;
  bool skip_covered_backup = false;
};

struct PhaseInfo {
  double beta = 0.0;
  double cost = 0.0;     // cost accrued during the phase
  int rounds = 0;        // uncovered arrivals handled in the phase
};

struct GuessDoubleResult {
  CoverState cover;
  std::vector<PhaseInfo> phases;
};

// Budget-doubling wrapper: the first uncovered arrival sets beta_0 to its
// cheapest covering cost; a phase ends when its accrued cost exceeds
// c_phase * beta * (ln m + ln n), after which beta doubles and the weights
// are re-initialized. Coverage and purchases persist across phases.
GuessDoubleResult guess_and_double(const SetSystem& sys, const IncidenceIndex& index,
                                   const ArrivalOrder& order, RngStream& rng,
                                   GdOptions opts = {});

}  // namespace rocover
