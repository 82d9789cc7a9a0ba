#include "rocover/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace rocover {

GreedyResult greedy_offline(const SetSystem& sys) {
  GreedyResult result;
  std::vector<char> covered(static_cast<std::size_t>(sys.n), 0);
  long long remaining = sys.n;
  while (remaining > 0) {
    int best = -1;
    double best_ratio = 0.0;
    for (int j = 0; j < sys.m; ++j) {
      long long fresh = 0;
      for (int e : sys.members[static_cast<std::size_t>(j)]) {
        fresh += covered[static_cast<std::size_t>(e)] ? 0 : 1;
      }
      if (fresh == 0) continue;
      double ratio = sys.costs[static_cast<std::size_t>(j)] / static_cast<double>(fresh);
      if (best < 0 || ratio < best_ratio) {
        best = j;
        best_ratio = ratio;
      }
    }
    if (best < 0) throw Error("greedy_offline: some element is not coverable");
    result.sets.push_back(best);
    result.cost += sys.costs[static_cast<std::size_t>(best)];
    for (int e : sys.members[static_cast<std::size_t>(best)]) {
      auto idx = static_cast<std::size_t>(e);
      if (!covered[idx]) {
        covered[idx] = 1;
        --remaining;
      }
    }
  }
  return result;
}

namespace {

// Shared search state for the branch-and-bound oracle. Set membership masks
// are 64-bit, which is why exact_opt is limited to m <= 64.
struct OptSearch {
  const SetSystem& sys;
  std::vector<int> active;                    // non-dominated set ids, ascending
  std::vector<std::uint64_t> elem_mask;       // per element: active sets containing it
  std::vector<std::vector<int>> elem_sets;    // same as masks, as id lists
  std::vector<double> kappa;                  // per element: cheapest active cover
  std::vector<int> lb_order;                  // elements by (-kappa, id)
  long long node_budget;
  long long nodes = 0;
  bool budget_hit = false;

  std::vector<int> covered_by;                // count of chosen sets covering element
  long long num_uncovered;
  std::vector<int> chosen;
  double chosen_cost = 0.0;

  std::vector<int> best_sets;
  double best_cost = 0.0;

  double lower_bound() const {
    double lb = 0.0;
    std::uint64_t used = 0;
    for (int v : lb_order) {
      auto idx = static_cast<std::size_t>(v);
      if (covered_by[idx] > 0) continue;
      if ((elem_mask[idx] & used) != 0) continue;
      lb += kappa[idx];
      used |= elem_mask[idx];
    }
    return lb;
  }

  void add(int j) {
    chosen.push_back(j);
    chosen_cost += sys.costs[static_cast<std::size_t>(j)];
    for (int e : sys.members[static_cast<std::size_t>(j)]) {
      if (covered_by[static_cast<std::size_t>(e)]++ == 0) --num_uncovered;
    }
  }

  void remove(int j) {
    chosen.pop_back();
    chosen_cost -= sys.costs[static_cast<std::size_t>(j)];
    for (int e : sys.members[static_cast<std::size_t>(j)]) {
      if (--covered_by[static_cast<std::size_t>(e)] == 0) ++num_uncovered;
    }
  }

  void dfs() {
    if (budget_hit) return;
    if (++nodes > node_budget) {
      budget_hit = true;
      return;
    }
    if (num_uncovered == 0) {
      if (chosen_cost < best_cost) {
        best_cost = chosen_cost;
        best_sets = chosen;
      }
      return;
    }
    if (chosen_cost + lower_bound() >= best_cost) return;

    // Branch on the uncovered element with the fewest covering sets.
    int branch_v = -1;
    std::size_t branch_degree = 0;
    for (int v = 0; v < sys.n; ++v) {
      auto idx = static_cast<std::size_t>(v);
      if (covered_by[idx] > 0) continue;
      std::size_t degree = elem_sets[idx].size();
      if (branch_v < 0 || degree < branch_degree) {
        branch_v = v;
        branch_degree = degree;
      }
    }
    for (int j : elem_sets[static_cast<std::size_t>(branch_v)]) {
      add(j);
      dfs();
      remove(j);
      if (budget_hit) return;
    }
  }
};

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  // Both sorted ascending.
  std::size_t i = 0;
  for (int e : a) {
    while (i < b.size() && b[i] < e) ++i;
    if (i == b.size() || b[i] != e) return false;
  }
  return true;
}

OptCertificate exhaustive_opt(const SetSystem& sys) {
  OptCertificate cert;
  cert.mode = OptMode::kExhaustive;
  if (sys.m > 25) throw Error("exact_opt: exhaustive mode supports m <= 25");
  bool found = false;
  std::vector<int> ids;
  for (std::uint64_t mask = 0; mask < (1ULL << sys.m); ++mask) {
    ++cert.nodes;
    std::vector<int> covered_count(static_cast<std::size_t>(sys.n), 0);
    double cost = 0.0;
    ids.clear();
    for (int j = 0; j < sys.m; ++j) {
      if (!(mask >> j & 1)) continue;
      ids.push_back(j);
      cost += sys.costs[static_cast<std::size_t>(j)];
      for (int e : sys.members[static_cast<std::size_t>(j)]) {
        covered_count[static_cast<std::size_t>(e)] = 1;
      }
    }
    bool covers = true;
    for (int v = 0; v < sys.n && covers; ++v) covers = covered_count[static_cast<std::size_t>(v)] > 0;
    if (!covers) continue;
    if (!found || cost < cert.cost || (cost == cert.cost && ids < cert.sets)) {
      found = true;
      cert.cost = cost;
      cert.sets = ids;
    }
  }
  if (!found) throw Error("exact_opt: instance has no cover");
  cert.exact = true;
  cert.lower_bound = cert.cost;
  cert.upper_bound = cert.cost;
  return cert;
}

}  // namespace

OptCertificate exact_opt(const SetSystem& sys, OptLimits limits) {
  if (sys.m > 64) {
    throw Error("exact_opt: supports at most 64 sets; use a planted certificate instead");
  }
  auto violations = validate(sys);
  if (!violations.empty()) throw Error("exact_opt: invalid instance: " + violations.front());
  if (sys.n == 0) {
    OptCertificate empty;
    empty.mode = limits.force_exhaustive ? OptMode::kExhaustive : OptMode::kBranchAndBound;
    return empty;
  }
  if (limits.force_exhaustive) return exhaustive_opt(sys);

  // Drop dominated sets: j loses to i when members[j] is a subset of
  // members[i] at no lower cost (ties keep the lower id).
  std::vector<char> dominated(static_cast<std::size_t>(sys.m), 0);
  for (int j = 0; j < sys.m; ++j) {
    for (int i = 0; i < sys.m && !dominated[static_cast<std::size_t>(j)]; ++i) {
      if (i == j || dominated[static_cast<std::size_t>(i)]) continue;
      const auto& mj = sys.members[static_cast<std::size_t>(j)];
      const auto& mi = sys.members[static_cast<std::size_t>(i)];
      double cj = sys.costs[static_cast<std::size_t>(j)];
      double ci = sys.costs[static_cast<std::size_t>(i)];
      if (!is_subset(mj, mi)) continue;
      bool equal = mj.size() == mi.size();
      if (cj > ci || (cj == ci && (!equal || j > i))) {
        dominated[static_cast<std::size_t>(j)] = 1;
      }
    }
  }

  OptSearch search{sys};
  search.node_budget = limits.node_budget;
  for (int j = 0; j < sys.m; ++j) {
    if (!dominated[static_cast<std::size_t>(j)]) search.active.push_back(j);
  }
  search.elem_mask.assign(static_cast<std::size_t>(sys.n), 0);
  search.elem_sets.assign(static_cast<std::size_t>(sys.n), {});
  search.kappa.assign(static_cast<std::size_t>(sys.n), 0.0);
  for (std::size_t a = 0; a < search.active.size(); ++a) {
    int j = search.active[a];
    for (int e : sys.members[static_cast<std::size_t>(j)]) {
      search.elem_mask[static_cast<std::size_t>(e)] |= 1ULL << a;
      search.elem_sets[static_cast<std::size_t>(e)].push_back(j);
    }
  }
  for (int v = 0; v < sys.n; ++v) {
    auto idx = static_cast<std::size_t>(v);
    if (search.elem_sets[idx].empty()) throw Error("exact_opt: instance has no cover");
    double k = sys.costs[static_cast<std::size_t>(search.elem_sets[idx].front())];
    for (int j : search.elem_sets[idx]) {
      k = std::min(k, sys.costs[static_cast<std::size_t>(j)]);
    }
    search.kappa[idx] = k;
  }
  search.lb_order.resize(static_cast<std::size_t>(sys.n));
  for (int v = 0; v < sys.n; ++v) search.lb_order[static_cast<std::size_t>(v)] = v;
  std::sort(search.lb_order.begin(), search.lb_order.end(), [&](int a, int b) {
    double ka = search.kappa[static_cast<std::size_t>(a)];
    double kb = search.kappa[static_cast<std::size_t>(b)];
    return ka != kb ? ka > kb : a < b;
  });

  GreedyResult greedy = greedy_offline(sys);
  search.best_cost = greedy.cost;
  search.best_sets = greedy.sets;
  std::sort(search.best_sets.begin(), search.best_sets.end());

  search.covered_by.assign(static_cast<std::size_t>(sys.n), 0);
  search.num_uncovered = sys.n;
  double root_lb = search.lower_bound();
  search.dfs();

  OptCertificate cert;
  cert.mode = OptMode::kBranchAndBound;
  cert.sets = search.best_sets;
  std::sort(cert.sets.begin(), cert.sets.end());
  cert.cost = search.best_cost;
  cert.nodes = search.nodes;
  cert.exact = !search.budget_hit;
  cert.upper_bound = search.best_cost;
  cert.lower_bound = cert.exact ? cert.cost : root_lb;
  return cert;
}

BnFractionalResult bn_fractional(const SetSystem& sys, const ArrivalOrder& order) {
  for (double c : sys.costs) {
    if (c != 1.0) throw Error("bn_fractional: requires unit costs");
  }
  if (static_cast<int>(order.size()) != sys.n) throw Error("bn_fractional: order length != n");
  IncidenceIndex index = build_incidence(sys);
  BnFractionalResult result;
  result.x.assign(static_cast<std::size_t>(sys.m), 0.0);
  for (int v : order) {
    const auto& sets = index.sets_of[static_cast<std::size_t>(v)];
    if (sets.empty()) throw Error("bn_fractional: element not coverable");
    double mass = 0.0;
    for (int j : sets) mass += result.x[static_cast<std::size_t>(j)];
    if (mass < 1.0) {
      double raise = (1.0 - mass) / static_cast<double>(sets.size());
      for (int j : sets) result.x[static_cast<std::size_t>(j)] += raise;
    }
  }
  double log_n = std::log(static_cast<double>(std::max(sys.n, 1)));
  for (double xj : result.x) {
    result.expected_rounded_size += std::min(log_n * xj, 1.0);
  }
  return result;
}

BnOnlineResult bn_online(const SetSystem& sys, const IncidenceIndex& index,
                         const ArrivalOrder& order, RngStream& rng) {
  for (double c : sys.costs) {
    if (c != 1.0) throw Error("bn_online: requires unit costs");
  }
  if (static_cast<int>(order.size()) != sys.n) throw Error("bn_online: order length != n");
  BnOnlineResult result{CoverState(sys.n), 0, 0};
  std::vector<double> x(static_cast<std::size_t>(sys.m), 0.0);
  std::vector<double> threshold(static_cast<std::size_t>(sys.m));
  std::vector<char> bought(static_cast<std::size_t>(sys.m), 0);
  for (auto& th : threshold) th = rng.uniform01();
  double log_n = std::log(static_cast<double>(std::max(sys.n, 1)));

  for (std::size_t t = 0; t < order.size(); ++t) {
    int v = order[t];
    int round = static_cast<int>(t) + 1;
    const auto& sets = index.sets_of[static_cast<std::size_t>(v)];
    if (sets.empty()) throw Error("bn_online: element not coverable");
    double mass = 0.0;
    for (int j : sets) mass += x[static_cast<std::size_t>(j)];
    if (mass < 1.0) {
      double raise = (1.0 - mass) / static_cast<double>(sets.size());
      for (int j : sets) x[static_cast<std::size_t>(j)] += raise;
    }
    // Only weights of sets containing v moved; buy the ones that crossed
    // their threshold.
    for (int j : sets) {
      auto idx = static_cast<std::size_t>(j);
      if (bought[idx]) continue;
      double q = std::min(log_n * x[idx], 1.0);
      if (q > threshold[idx]) {
        bought[idx] = 1;
        result.cover.buy(round, j, PurchaseReason::kSampled, sys);
        ++result.rounded_purchases;
      }
    }
    if (!result.cover.is_covered(v)) {
      SetChoice cheapest = cheapest_covering_set(index, sys.costs, v);
      result.cover.buy(round, cheapest.set, PurchaseReason::kBackup, sys);
      ++result.patch_purchases;
    }
  }
  return result;
}

CoverState naive_online(const SetSystem& sys, const IncidenceIndex& index,
                        const ArrivalOrder& order) {
  if (static_cast<int>(order.size()) != sys.n) throw Error("naive_online: order length != n");
  CoverState cover(sys.n);
  for (std::size_t t = 0; t < order.size(); ++t) {
    int v = order[t];
    if (cover.is_covered(v)) continue;
    SetChoice cheapest = cheapest_covering_set(index, sys.costs, v);
    cover.buy(static_cast<int>(t) + 1, cheapest.set, PurchaseReason::kBackup, sys);
  }
  return cover;
}

}  // namespace rocover
