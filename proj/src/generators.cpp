#include "rocover/generators.hpp"

#include <algorithm>
#include <cmath>

#include "rocover/rng.hpp"

namespace rocover {

PlantedInstance gen_planted(const PlantedSpec& spec, std::uint64_t seed) {
  if (spec.k < 1 || spec.k > spec.m) throw Error("gen_planted: need 1 <= k <= m");
  if (spec.n < spec.k) throw Error("gen_planted: need n >= k");
  if (!(spec.p_extra >= 0.0 && spec.p_extra <= 1.0)) {
    throw Error("gen_planted: p_extra must be in [0, 1]");
  }
  if (spec.cost_jitter < 0.0) throw Error("gen_planted: cost_jitter must be nonnegative");

  RngStream rng(seed);
  PlantedInstance out;
  out.sys.n = spec.n;
  out.sys.m = spec.m;
  out.sys.members.assign(static_cast<std::size_t>(spec.m), {});
  out.sys.costs.assign(static_cast<std::size_t>(spec.m), 1.0);

  // Shuffled universe dealt into k chunks whose sizes differ by at most one.
  std::vector<int> perm = rng.shuffle(spec.n);
  int base = spec.n / spec.k;
  int extra = spec.n % spec.k;
  std::size_t cursor = 0;
  for (int j = 0; j < spec.k; ++j) {
    int size = base + (j < extra ? 1 : 0);
    auto& members = out.sys.members[static_cast<std::size_t>(j)];
    members.assign(perm.begin() + static_cast<std::ptrdiff_t>(cursor),
                   perm.begin() + static_cast<std::ptrdiff_t>(cursor) + size);
    std::sort(members.begin(), members.end());
    cursor += static_cast<std::size_t>(size);
  }

  for (int j = spec.k; j < spec.m; ++j) {
    auto& members = out.sys.members[static_cast<std::size_t>(j)];
    for (int e = 0; e < spec.n; ++e) {
      if (rng.bernoulli(spec.p_extra)) members.push_back(e);
    }
  }

  if (spec.cost_jitter > 0.0) {
    for (int j = 0; j < spec.m; ++j) {
      out.sys.costs[static_cast<std::size_t>(j)] = 1.0 + spec.cost_jitter * rng.uniform01();
    }
  }

  out.planted_sets.resize(static_cast<std::size_t>(spec.k));
  for (int j = 0; j < spec.k; ++j) {
    out.planted_sets[static_cast<std::size_t>(j)] = j;
    out.planted_cost += out.sys.costs[static_cast<std::size_t>(j)];
  }
  return out;
}

SetSystem upper_triangular_with_labels(int n, std::span<const int> labels) {
  if (n < 0) throw Error("upper_triangular_with_labels: n must be nonnegative");
  if (static_cast<int>(labels.size()) != n) {
    throw Error("upper_triangular_with_labels: labels must be a permutation of [n]");
  }
  SetSystem sys;
  sys.n = n;
  sys.m = n;
  sys.members.assign(static_cast<std::size_t>(n), {});
  sys.costs.assign(static_cast<std::size_t>(n), 1.0);
  for (int i = 1; i <= n; ++i) {
    int label = labels[static_cast<std::size_t>(i - 1)];
    if (label < 0 || label >= n) throw Error("upper_triangular_with_labels: label out of range");
    auto& members = sys.members[static_cast<std::size_t>(label)];
    members.resize(static_cast<std::size_t>(i));
    for (int t = 0; t < i; ++t) members[static_cast<std::size_t>(t)] = n - i + t;
  }
  return sys;
}

SetSystem gen_upper_triangular(int n, std::uint64_t seed) {
  RngStream rng(seed);
  std::vector<int> labels = rng.shuffle(n);
  return upper_triangular_with_labels(n, labels);
}

RecursiveInstance gen_recursive(int levels, std::uint64_t seed) {
  if (levels < 1 || levels > 20) throw Error("gen_recursive: levels must be in [1, 20]");
  RngStream rng(seed);
  int m = 1 << levels;
  RecursiveInstance out;
  out.sys.m = m;
  out.sys.members.assign(static_cast<std::size_t>(m), {});
  out.sys.costs.assign(static_cast<std::size_t>(m), 1.0);

  std::vector<int> survivors(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) survivors[static_cast<std::size_t>(j)] = j;

  int next_element = 0;
  for (int round = 1; round <= levels; ++round) {
    int fresh = 1 << (levels - round);
    for (int c = 0; c < fresh; ++c) {
      int e = next_element++;
      out.element_round.push_back(round);
      for (int j : survivors) out.sys.members[static_cast<std::size_t>(j)].push_back(e);
    }
    // Keep a uniformly random half of the survivors.
    std::vector<int> picks = rng.shuffle(static_cast<int>(survivors.size()));
    std::size_t half = survivors.size() / 2;
    std::vector<int> kept;
    kept.reserve(half);
    for (std::size_t t = 0; t < half; ++t) {
      kept.push_back(survivors[static_cast<std::size_t>(picks[t])]);
    }
    std::sort(kept.begin(), kept.end());
    survivors = std::move(kept);
    out.survivor_chain.push_back(survivors);
  }
  out.sys.n = next_element;  // 2^levels - 1
  return out;
}

BinomialInstance gen_binomial(int r, std::uint64_t seed, long long set_cap) {
  if (r < 1) throw Error("gen_binomial: r must be positive");
  long long ground = 10LL * r * r;
  long long count = 1;
  for (int i = 1; i <= r; ++i) {
    count = count * (ground - r + i) / i;
    if (count > set_cap) {
      throw Error("gen_binomial: C(" + std::to_string(ground) + ", " + std::to_string(r) +
                  ") exceeds the set cap of " + std::to_string(set_cap));
    }
  }

  RngStream rng(seed);
  std::vector<int> deal = rng.shuffle(static_cast<int>(ground));
  BinomialInstance out;
  out.universe.assign(deal.begin(), deal.begin() + r);
  std::sort(out.universe.begin(), out.universe.end());

  // Original ground id -> realized element id (or -1).
  std::vector<int> realized(static_cast<std::size_t>(ground), -1);
  for (int e = 0; e < r; ++e) {
    realized[static_cast<std::size_t>(out.universe[static_cast<std::size_t>(e)])] = e;
  }

  out.sys.n = r;
  out.sys.m = static_cast<int>(count);
  out.sys.members.reserve(static_cast<std::size_t>(count));
  out.sys.costs.assign(static_cast<std::size_t>(count), 1.0);

  // All r-subsets of the ground set in lexicographic order, each stored as
  // its intersection with the realized universe.
  std::vector<int> combo(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) combo[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<int> members;
    for (int g : combo) {
      int e = realized[static_cast<std::size_t>(g)];
      if (e >= 0) members.push_back(e);
    }
    std::sort(members.begin(), members.end());
    out.sys.members.push_back(std::move(members));
    int i = r - 1;
    while (i >= 0 && combo[static_cast<std::size_t>(i)] == ground - r + i) --i;
    if (i < 0) break;
    ++combo[static_cast<std::size_t>(i)];
    for (int t = i + 1; t < r; ++t) {
      combo[static_cast<std::size_t>(t)] = combo[static_cast<std::size_t>(t - 1)] + 1;
    }
  }
  return out;
}

BatchedInstance gen_product_batched(int big_n, const SetSystem& h, std::uint64_t seed) {
  if (big_n < 1) throw Error("gen_product_batched: need at least one outer row");
  if (h.n < 1 || h.m < 1) throw Error("gen_product_batched: inner instance must be nonempty");
  for (double c : h.costs) {
    if (c != 1.0) throw Error("gen_product_batched: inner instance must have unit costs");
  }
  SetSystem delta = gen_upper_triangular(big_n, seed);

  BatchedInstance out;
  out.base.n = big_n * h.n;
  out.base.m = big_n * h.m;
  out.base.members.assign(static_cast<std::size_t>(out.base.m), {});
  out.base.costs.assign(static_cast<std::size_t>(out.base.m), 1.0);
  for (int i = 0; i < big_n; ++i) {
    for (int j = 0; j < h.m; ++j) {
      auto& members = out.base.members[static_cast<std::size_t>(i * h.m + j)];
      members.reserve(delta.members[static_cast<std::size_t>(i)].size() *
                      h.members[static_cast<std::size_t>(j)].size());
      for (int a : delta.members[static_cast<std::size_t>(i)]) {
        for (int b : h.members[static_cast<std::size_t>(j)]) {
          members.push_back(a * h.n + b);
        }
      }
    }
  }
  out.batches.assign(static_cast<std::size_t>(big_n), {});
  for (int a = 0; a < big_n; ++a) {
    auto& batch = out.batches[static_cast<std::size_t>(a)];
    batch.resize(static_cast<std::size_t>(h.n));
    for (int b = 0; b < h.n; ++b) batch[static_cast<std::size_t>(b)] = a * h.n + b;
  }
  return out;
}

GeneratedInstance generate(const GenSpec& spec) {
  GeneratedInstance out;
  out.meta["family"] = spec.family;
  out.meta["seed"] = spec.seed;
  if (spec.family == "planted") {
    PlantedSpec ps{spec.n, spec.m, spec.k, spec.p_extra, spec.cost_jitter};
    PlantedInstance planted = gen_planted(ps, spec.seed);
    out.meta["n"] = spec.n;
    out.meta["m"] = spec.m;
    out.meta["k"] = spec.k;
    out.meta["p_extra"] = spec.p_extra;
    out.meta["cost_jitter"] = spec.cost_jitter;
    MetaJson cover = MetaJson::array();
    for (int j : planted.planted_sets) cover.push_back(j + 1);
    out.meta["planted_sets"] = cover;
    out.meta["opt"] = planted.planted_cost;
    out.meta["opt_kind"] = "planted-cover";
    out.instance = std::move(planted.sys);
  } else if (spec.family == "upper-triangular") {
    SetSystem sys = gen_upper_triangular(spec.n, spec.seed);
    out.meta["n"] = spec.n;
    out.meta["m"] = spec.n;
    out.meta["opt"] = 1.0;
    out.meta["opt_kind"] = "construction";
    out.instance = std::move(sys);
  } else if (spec.family == "recursive") {
    RecursiveInstance rec = gen_recursive(spec.levels, spec.seed);
    out.meta["levels"] = spec.levels;
    out.meta["n"] = rec.sys.n;
    out.meta["m"] = rec.sys.m;
    out.meta["element_round"] = rec.element_round;
    out.meta["opt"] = 1.0;
    out.meta["opt_kind"] = "construction";
    out.instance = std::move(rec.sys);
  } else if (spec.family == "binomial") {
    BinomialInstance bin = gen_binomial(spec.r, spec.seed);
    out.meta["r"] = spec.r;
    out.meta["n"] = bin.sys.n;
    out.meta["m"] = bin.sys.m;
    MetaJson universe = MetaJson::array();
    for (int g : bin.universe) universe.push_back(g + 1);
    out.meta["universe"] = universe;
    out.meta["opt"] = 1.0;
    out.meta["opt_kind"] = "construction";
    out.instance = std::move(bin.sys);
  } else if (spec.family == "product-batched") {
    if (!spec.inner) throw Error("generate: product-batched needs an inner instance");
    BatchedInstance prod = gen_product_batched(spec.batches, *spec.inner, spec.seed);
    out.meta["batches"] = spec.batches;
    out.meta["batch_size"] = spec.inner->n;
    out.meta["n"] = prod.base.n;
    out.meta["m"] = prod.base.m;
    if (spec.inner_opt) {
      // The full outer set exists, so covering each inner-optimal set across
      // it matches the inner optimum.
      out.meta["opt"] = *spec.inner_opt;
      out.meta["opt_kind"] = "inner-optimum";
    }
    out.instance = std::move(prod);
  } else {
    throw Error("generate: unknown family '" + spec.family + "'");
  }
  return out;
}

}  // namespace rocover
