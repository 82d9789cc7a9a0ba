#include "rocover/learn_or_cover.hpp"

#include <algorithm>
#include <cmath>

namespace rocover {

void CoverState::buy(int round, int set, PurchaseReason reason, const SetSystem& sys) {
  double cost = sys.costs[static_cast<std::size_t>(set)];
  purchased.push_back(Purchase{round, set, reason, cost});
  total_cost += cost;
  for (int e : sys.members[static_cast<std::size_t>(set)]) {
    auto idx = static_cast<std::size_t>(e);
    if (!covered[idx]) {
      covered[idx] = 1;
      --uncovered_count;
    }
  }
}

FractionalState loc_init(std::span<const double> costs, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error("loc_init: beta must be positive");
  FractionalState state;
  state.beta = beta;
  state.support.resize(costs.size());
  long long affordable = 0;
  for (std::size_t j = 0; j < costs.size(); ++j) {
    state.support[j] = costs[j] <= beta ? 1 : 0;
    affordable += state.support[j];
  }
  if (affordable == 0) {
    throw Error("loc_init: no set has cost <= beta (budget infeasible)");
  }
  state.x.assign(costs.size(), 0.0);
  for (std::size_t j = 0; j < costs.size(); ++j) {
    if (state.support[j]) {
      state.x[j] = beta / (costs[j] * static_cast<double>(affordable));
    }
  }
  return state;
}

LearnOrCover::LearnOrCover(const SetSystem& sys, const IncidenceIndex& index, double beta,
                           LocOptions opts)
    : sys_(&sys), index_(&index), opts_(opts), state_(loc_init(sys.costs, beta)) {}

void LearnOrCover::reset_weights(double beta) { state_ = loc_init(sys_->costs, beta); }

double LearnOrCover::coverage_mass(int v) const {
  double mass = 0.0;
  for (int j : index_->sets_of[static_cast<std::size_t>(v)]) {
    mass += state_.x[static_cast<std::size_t>(j)];
  }
  return mass;
}

RoundRecord LearnOrCover::step(int round, int v, CoverState& cover, RngStream& rng) {
  if (cover.is_covered(v)) throw Error("LearnOrCover::step: arrival is already covered");
  const auto& costs = sys_->costs;
  const auto& sets_of_v = index_->sets_of[static_cast<std::size_t>(v)];
  SetChoice cheapest = cheapest_covering_set(*index_, costs, v);
  double kappa = cheapest.kappa;
  double beta = state_.beta;

  RoundRecord rec;
  rec.round = round;
  rec.id = v;
  rec.uncovered = true;
  rec.kappa = kappa;
  rec.delta = 1.0;

  // Independent sampling pass over the support.
  for (std::size_t j = 0; j < state_.x.size(); ++j) {
    double xj = state_.x[j];
    if (xj <= 0.0) continue;
    double p = std::min(kappa * xj / beta, 1.0);
    if (rng.bernoulli(p)) {
      cover.buy(round, static_cast<int>(j), PurchaseReason::kSampled, *sys_);
      rec.sampled_cost += costs[j];
    }
  }

  // Multiplicative reweighting, gated on the pre-round mass at v.
  double mass = 0.0;
  for (int j : sets_of_v) mass += state_.x[static_cast<std::size_t>(j)];
  rec.x_cov = mass;
  if (mass < 1.0) {
    for (int j : sets_of_v) {
      auto idx = static_cast<std::size_t>(j);
      if (state_.x[idx] <= 0.0) continue;
      // kappa <= costs[j] for every set containing v, so the exponent is in (0, 1].
      state_.x[idx] *= std::exp(kappa / costs[idx]);
    }
    renormalize_budget(state_, costs);
  }

  // Backup: the cheapest set containing v.
  if (!opts_.skip_covered_backup || !cover.is_covered(v)) {
    cover.buy(round, cheapest.set, PurchaseReason::kBackup, *sys_);
    rec.backup_cost = cheapest.kappa;
  }
  return rec;
}

namespace {

RoundRecord covered_arrival_record(int round, int v, const IncidenceIndex& index,
                                   const SetSystem& sys, const std::vector<double>& x) {
  RoundRecord rec;
  rec.round = round;
  rec.id = v;
  rec.uncovered = false;
  rec.kappa = cheapest_covering_set(index, sys.costs, v).kappa;
  double mass = 0.0;
  for (int j : index.sets_of[static_cast<std::size_t>(v)]) {
    mass += x[static_cast<std::size_t>(j)];
  }
  rec.x_cov = mass;
  return rec;
}

void check_order(const ArrivalOrder& order, int n) {
  if (static_cast<int>(order.size()) != n) throw Error("arrival order length != n");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      throw Error("arrival order is not a permutation of the elements");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

}  // namespace

RunResult loc_run(const SetSystem& sys, const IncidenceIndex& index, const ArrivalOrder& order,
                  double beta, RngStream& rng, LocOptions opts, const RoundObserver* observer) {
  check_order(order, sys.n);
  RunResult result{CoverState(sys.n), {}};
  result.trace.reserve(order.size());
  LearnOrCover alg(sys, index, beta, opts);
  for (std::size_t t = 0; t < order.size(); ++t) {
    int v = order[t];
    int round = static_cast<int>(t) + 1;
    RoundRecord rec = result.cover.is_covered(v)
                          ? covered_arrival_record(round, v, index, sys, alg.state().x)
                          : alg.step(round, v, result.cover, rng);
    result.trace.push_back(rec);
    if (observer) (*observer)(RunView{rec, alg.state(), result.cover});
  }
  return result;
}

RunResult loc_run(const SetSystem& sys, const ArrivalOrder& order, double beta, RngStream& rng,
                  LocOptions opts) {
  IncidenceIndex index = build_incidence(sys);
  return loc_run(sys, index, order, beta, rng, opts, nullptr);
}

RunResult unit_loc_run(const SetSystem& sys, const IncidenceIndex& index,
                       const ArrivalOrder& order, RngStream& rng, UnitLocOptions opts,
                       const RoundObserver* observer) {
  check_order(order, sys.n);
  for (double c : sys.costs) {
    if (c != 1.0) throw Error("unit_loc_run: requires unit costs");
  }
  if (sys.m == 0 && sys.n > 0) throw Error("unit_loc_run: no sets");

  FractionalState state;
  state.beta = 1.0;
  state.x.assign(static_cast<std::size_t>(sys.m), sys.m > 0 ? 1.0 / sys.m : 0.0);
  state.support.assign(static_cast<std::size_t>(sys.m), 1);

  RunResult result{CoverState(sys.n), {}};
  result.trace.reserve(order.size());
  for (std::size_t t = 0; t < order.size(); ++t) {
    int v = order[t];
    int round = static_cast<int>(t) + 1;
    RoundRecord rec;
    if (result.cover.is_covered(v)) {
      rec = covered_arrival_record(round, v, index, sys, state.x);
    } else {
      rec.round = round;
      rec.id = v;
      rec.uncovered = true;
      rec.kappa = 1.0;

      // One draw from the current distribution.
      auto sampled = static_cast<int>(rng.weighted_choice(state.x));
      result.cover.buy(round, sampled, PurchaseReason::kSampled, sys);
      rec.sampled_cost = 1.0;

      const auto& sets_of_v = index.sets_of[static_cast<std::size_t>(v)];
      double mass = 0.0;
      for (int j : sets_of_v) mass += state.x[static_cast<std::size_t>(j)];
      rec.x_cov = mass;
      if (mass < 1.0) {
        for (int j : sets_of_v) state.x[static_cast<std::size_t>(j)] *= std::numbers::e;
        double total = 0.0;
        for (double xj : state.x) total += xj;
        for (double& xj : state.x) xj /= total;
      }

      if (!opts.conditional_backup || !result.cover.is_covered(v)) {
        SetChoice cheapest = cheapest_covering_set(index, sys.costs, v);
        result.cover.buy(round, cheapest.set, PurchaseReason::kBackup, sys);
        rec.backup_cost = 1.0;
      }
    }
    result.trace.push_back(rec);
    if (observer) (*observer)(RunView{rec, state, result.cover});
  }
  return result;
}

RunResult unit_loc_run(const SetSystem& sys, const ArrivalOrder& order, RngStream& rng,
                       UnitLocOptions opts) {
  IncidenceIndex index = build_incidence(sys);
  return unit_loc_run(sys, index, order, rng, opts, nullptr);
}

namespace {

long long binomial_capped(int m, int k, long long cap) {
  long long result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (m - k + i) / i stays integral at each step.
    double projected = static_cast<double>(result) * (m - k + i) / i;
    if (projected > 2.0 * static_cast<double>(cap)) return cap + 1;
    result = result * (m - k + i) / i;
    if (result > cap) return cap + 1;
  }
  return result;
}

}  // namespace

SimpleLocResult simple_loc_run(const SetSystem& sys, const IncidenceIndex& index,
                               const ArrivalOrder& order, int k, RngStream& rng,
                               long long family_cap) {
  check_order(order, sys.n);
  for (double c : sys.costs) {
    if (c != 1.0) throw Error("simple_loc_run: requires unit costs");
  }
  if (k < 1 || k > sys.m) throw Error("simple_loc_run: k must be in [1, m]");
  long long family_size = binomial_capped(sys.m, k, family_cap);
  if (family_size > family_cap) {
    throw Error("simple_loc_run: C(m, k) exceeds the family cap of " +
                std::to_string(family_cap));
  }

  // All k-subsets of set ids, flattened with stride k, in lexicographic order.
  std::vector<int> tuples;
  tuples.reserve(static_cast<std::size_t>(family_size) * static_cast<std::size_t>(k));
  std::vector<int> combo(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) combo[static_cast<std::size_t>(i)] = i;
  while (true) {
    tuples.insert(tuples.end(), combo.begin(), combo.end());
    int i = k - 1;
    while (i >= 0 && combo[static_cast<std::size_t>(i)] == sys.m - k + i) --i;
    if (i < 0) break;
    ++combo[static_cast<std::size_t>(i)];
    for (int t = i + 1; t < k; ++t) {
      combo[static_cast<std::size_t>(t)] = combo[static_cast<std::size_t>(t - 1)] + 1;
    }
  }

  // Element membership bitmask per set, for fast "does tuple cover v".
  std::size_t blocks = (static_cast<std::size_t>(sys.n) + 63) / 64;
  std::vector<std::uint64_t> set_mask(static_cast<std::size_t>(sys.m) * blocks, 0);
  for (int j = 0; j < sys.m; ++j) {
    for (int e : sys.members[static_cast<std::size_t>(j)]) {
      set_mask[static_cast<std::size_t>(j) * blocks + static_cast<std::size_t>(e >> 6)] |=
          1ULL << (e & 63);
    }
  }
  auto set_covers = [&](int j, int v) {
    return (set_mask[static_cast<std::size_t>(j) * blocks + static_cast<std::size_t>(v >> 6)] &
            (1ULL << (v & 63))) != 0;
  };

  std::vector<long long> alive(static_cast<std::size_t>(family_size));
  for (long long i = 0; i < family_size; ++i) alive[static_cast<std::size_t>(i)] = i;

  SimpleLocResult result{CoverState(sys.n), family_size, {}};
  for (std::size_t t = 0; t < order.size(); ++t) {
    int v = order[t];
    int round = static_cast<int>(t) + 1;
    if (!result.cover.is_covered(v)) {
      if (alive.empty()) {
        throw Error("simple_loc_run: tuple family exhausted (k too small for this instance)");
      }
      long long pick = alive[rng.uniform_index(alive.size())];
      int member = tuples[static_cast<std::size_t>(pick) * static_cast<std::size_t>(k) +
                          rng.uniform_index(static_cast<std::uint64_t>(k))];
      result.cover.buy(round, member, PurchaseReason::kSampled, sys);
      SetChoice cheapest = cheapest_covering_set(index, sys.costs, v);
      result.cover.buy(round, cheapest.set, PurchaseReason::kBackup, sys);
    }
    // Every arrival prunes tuples that do not cover it, covered or not.
    std::vector<long long> next;
    next.reserve(alive.size());
    for (long long id : alive) {
      const int* tuple = &tuples[static_cast<std::size_t>(id) * static_cast<std::size_t>(k)];
      bool covers = false;
      for (int i = 0; i < k && !covers; ++i) covers = set_covers(tuple[i], v);
      if (covers) next.push_back(id);
    }
    alive = std::move(next);
    if (alive.empty() && result.cover.uncovered_count > 0) {
      throw Error("simple_loc_run: tuple family exhausted (k too small for this instance)");
    }
  }

  result.final_family.reserve(alive.size());
  for (long long id : alive) {
    const int* tuple = &tuples[static_cast<std::size_t>(id) * static_cast<std::size_t>(k)];
    result.final_family.emplace_back(tuple, tuple + k);
  }
  return result;
}

GuessDoubleResult guess_and_double(const SetSystem& sys, const IncidenceIndex& index,
                                   const ArrivalOrder& order, RngStream& rng, GdOptions opts) {
  check_order(order, sys.n);
  GuessDoubleResult result{CoverState(sys.n), {}};
  std::optional<LearnOrCover> alg;
  double phase_cost = 0.0;
  int phase_rounds = 0;
  double log_sizes = std::log(static_cast<double>(std::max(sys.m, 1))) +
                     std::log(static_cast<double>(std::max(sys.n, 1)));
  LocOptions loc_opts{opts.skip_covered_backup};

  for (std::size_t t = 0; t < order.size(); ++t) {
    int v = order[t];
    if (result.cover.is_covered(v)) continue;
    if (!alg) {
      // beta_0: cheapest way to cover the first uncovered arrival.
      double beta0 = cheapest_covering_set(index, sys.costs, v).kappa;
      alg.emplace(sys, index, beta0, loc_opts);
    }
    double before = result.cover.total_cost;
    alg->step(static_cast<int>(t) + 1, v, result.cover, rng);
    phase_cost += result.cover.total_cost - before;
    ++phase_rounds;
    if (phase_cost > opts.c_phase * alg->beta() * log_sizes) {
      result.phases.push_back(PhaseInfo{alg->beta(), phase_cost, phase_rounds});
      alg->reset_weights(2.0 * alg->beta());
      phase_cost = 0.0;
      phase_rounds = 0;
    }
  }
  if (alg) {
    result.phases.push_back(PhaseInfo{alg->beta(), phase_cost, phase_rounds});
  }
  return result;
}

}  // namespace rocover
