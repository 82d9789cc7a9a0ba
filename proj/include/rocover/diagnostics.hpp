#pragma once

#include "rocover/cip.hpp"
#include "rocover/instance.hpp"
#include "rocover/kernel.hpp"
#include "rocover/learn_or_cover.hpp"
#include "rocover/rng.hpp"

namespace rocover {

// One arrival plus the potential terms after the round. phi is
// c1 * kl + c2 * beta * log(rho / beta), and -inf once rho hits zero.
struct TraceRow {
  RoundRecord rec;
  double kl = 0.0;
  double rho = 0.0;
  double phi = 0.0;
};

struct Trace {
  double beta = 0.0;
  double c1 = kPotentialC1;
  double c2 = kPotentialC2;
  double initial_kl = 0.0;
  double initial_rho = 0.0;
  double initial_phi = 0.0;
  std::vector<TraceRow> rows;
};

// Runs the sample-then-reweight algorithm and records the potential against
// the reference weights xstar after every arrival. xstar must fractionally
// cover every element (mass >= 1 on each element's sets) within budget
// (<costs, xstar> <= beta); both are checked.
Trace trace_loc_run(const SetSystem& sys, const IncidenceIndex& index, const ArrivalOrder& order,
                    double beta, RngStream& rng, std::span<const double> xstar,
                    LocOptions opts = {});

// Covering-IP version; xstar must satisfy every row (<a_i, xstar> >= 1)
// within budget. rho sums deficit * best-rate over the rows whose current
// deficit still exceeds the action threshold.
Trace trace_cip_run(const CipInstance& inst, const ArrivalOrder& order, double beta,
                    RngStream& rng, std::span<const double> xstar, CipOptions opts = {});

struct KlViolation {
  int round = 0;
  double delta_kl = 0.0;
  double bound = 0.0;
};

// Checks every reweighting round t (uncovered arrival with row mass below
// the deficit) against the per-round divergence drop guarantee
//   kl_t - kl_{t-1} <= (e - 1) * kappa * min(mass, deficit) - kappa + 1e-9.
// Rounds that skip the reweight are not checked (the weights do not move).
std::vector<KlViolation> kl_bound_check(const Trace& trace);

// Mid-run state of the set-cover algorithm, captured for the probe.
struct LocSnapshot {
  std::vector<double> x;
  std::vector<char> covered;
  double beta = 0.0;
  int round = 0;  // arrivals already processed
};

// Runs loc_run and copies the state right after the requested rounds
// (1-based, ascending). Returns the snapshots in the same order.
std::vector<LocSnapshot> capture_snapshots(const SetSystem& sys, const IncidenceIndex& index,
                                           const ArrivalOrder& order, double beta, RngStream& rng,
                                           std::span<const int> rounds, LocOptions opts = {});

struct ProbeResult {
  double mean = 0.0;  // estimate of E[potential change + round cost]
  double se = 0.0;    // standard error from the sampling randomness
  int uncovered = 0;
  double phi = 0.0;   // potential at the probed state
};

// One-round drift estimate at a frozen state: the arriving element is
// enumerated exactly (uniform over the uncovered), the divergence change and
// expected purchase cost are closed-form per element, and the change in
// log(rho) is averaged over `samples` draws of the sampling pass.
// Preconditions: at least one uncovered element and a nonnegative potential.
ProbeResult supermartingale_probe(const SetSystem& sys, const IncidenceIndex& index,
                                  const LocSnapshot& snapshot, std::span<const double> xstar,
                                  int samples, RngStream& rng);

// CSV with header t,id,uncovered,kappa,Xv,sampled_cost,backup_cost,kl,rho,phi
// (ids 1-based, numbers at 12 significant digits).
std::string trace_csv(const Trace& trace);
std::vector<TraceRow> parse_trace_csv(std::string_view text);

}  // namespace rocover
