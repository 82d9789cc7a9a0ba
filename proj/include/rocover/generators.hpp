#pragma once

#include <cstdint>
#include <optional>

#include "rocover/instance.hpp"
#include "rocover/io.hpp"

namespace rocover {

struct PlantedSpec {
  int n = 0;
  int m = 0;
  int k = 0;             // planted cover size; sets 0..k-1 are the planted ones
  double p_extra = 0.0;  // decoy membership probability per element
  double cost_jitter = 0.0;  // costs drawn from [1, 1 + cost_jitter]; 0 = unit
};

struct PlantedInstance {
  SetSystem sys;
  std::vector<int> planted_sets;  // always {0, ..., k-1}
  double planted_cost = 0.0;      // an upper bound on OPT, exact when decoys lose
};

// k planted sets partition a shuffled universe into near-equal chunks
// (sizes differ by at most one); the other m - k sets are random decoys.
PlantedInstance gen_planted(const PlantedSpec& spec, std::uint64_t seed);

// Nested suffix family: under labels pi, the set labeled pi[i-1] holds the
// last i elements. Every element's set family is a chain, OPT = 1 (the full
// set), and greedy-style algorithms are forced to pay a log factor.
SetSystem gen_upper_triangular(int n, std::uint64_t seed);
SetSystem upper_triangular_with_labels(int n, std::span<const int> labels);

struct RecursiveInstance {
  SetSystem sys;
  std::vector<int> element_round;            // 1-based round each element was added in
  std::vector<std::vector<int>> survivor_chain;  // surviving set ids after each round
};

// Halving construction: start with 2^levels sets; round i adds 2^(levels-i)
// fresh elements to every surviving set, then keeps a random half of the
// survivors. n = 2^levels - 1, unit costs, OPT = 1.
RecursiveInstance gen_recursive(int levels, std::uint64_t seed);

struct BinomialInstance {
  SetSystem sys;
  std::vector<int> universe;  // the realized elements' original ids in [0, 10r^2)
};

// All r-subsets of a 10r^2 ground set, materialized as their intersections
// with a random r-element realized universe. m = C(10r^2, r); requires that
// to fit under set_cap (r <= 3 with the default cap).
BinomialInstance gen_binomial(int r, std::uint64_t seed, long long set_cap = 200'000);

// Product of a seeded upper-triangular instance on big_n elements with an
// arbitrary unit-cost inner instance h: element (a, b) gets id a * h.n + b,
// set (i, j) = S_i x T_j gets id i * h.m + j, and batch a holds row a.
BatchedInstance gen_product_batched(int big_n, const SetSystem& h, std::uint64_t seed);

// CLI-facing generator dispatch: builds the instance plus its sidecar
// metadata (family, parameters, seed, and known optimum facts).
struct GenSpec {
  std::string family;  // planted | upper-triangular | recursive | binomial | product-batched
  std::uint64_t seed = 0;
  int n = 0;
  int m = 0;
  int k = 0;
  double p_extra = 0.0;
  double cost_jitter = 0.0;
  int levels = 0;
  int r = 0;
  int batches = 0;                  // product: number of outer rows
  std::optional<SetSystem> inner;   // product: the inner instance
  std::optional<double> inner_opt;  // product: known optimum of the inner instance
};

struct GeneratedInstance {
  LoadedInstance instance;
  MetaJson meta;
};

GeneratedInstance generate(const GenSpec& spec);

}  // namespace rocover
