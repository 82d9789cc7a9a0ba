#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rocover {

// Error type for hard failures (unsatisfiable preconditions, broken inputs).
// Structural validation uses the validate() report functions instead.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Arrival order: a permutation of the element (or row) ids {0, ..., n-1}.
using ArrivalOrder = std::vector<int>;

// Weighted set system. Elements and sets are dense 0-based ids internally
// (file formats are 1-based). Instances are immutable once built and safe to
// share read-only across concurrent trial workers.
struct SetSystem {
  int n = 0;  // elements
  int m = 0;  // sets
  std::vector<std::vector<int>> members;  // per set: sorted, duplicate-free
  std::vector<double> costs;              // positive, finite
};

// Element -> sorted list of sets containing it.
struct IncidenceIndex {
  std::vector<std::vector<int>> sets_of;
};

// Covering integer program: minimize <c, z> s.t. A z >= 1, z >= 0 integer,
// with A stored row-sparse and all coefficients in [0, 1].
struct CipRowEntry {
  int col = 0;
  double coeff = 0.0;
};

struct CipInstance {
  int n = 0;  // rows
  int m = 0;  // columns
  std::vector<std::vector<CipRowEntry>> rows;  // per row: sorted by col
  std::vector<double> costs;
};

// Set system plus a partition of the elements into arrival batches.
struct BatchedInstance {
  SetSystem base;
  std::vector<std::vector<int>> batches;  // each sorted; together partition [n]
};

// Structural invariant checks. Empty report means valid.
std::vector<std::string> validate(const SetSystem& sys);
std::vector<std::string> validate(const CipInstance& inst);
std::vector<std::string> validate(const BatchedInstance& inst);

IncidenceIndex build_incidence(const SetSystem& sys);

struct SetChoice {
  int set = -1;
  double kappa = 0.0;  // cost of that set
};

// Cheapest set containing v; ties break to the lowest set id. Throws Error
// if no set contains v.
SetChoice cheapest_covering_set(const IncidenceIndex& index,
                                std::span<const double> costs, int v);

// kappa_v for every element: cost of its cheapest covering set.
std::vector<double> element_kappas(const SetSystem& sys, const IncidenceIndex& index);

// max(0, 1 - <a_i, z>) for one row.
double row_deficit(std::span<const CipRowEntry> row, std::span<const long long> z);

struct ColumnChoice {
  int col = -1;
  double kappa = 0.0;  // deficit * min_k costs[k] / a_ik
};

// Column minimizing costs[k] / a_ik over the row's nonzero entries (ties to
// the lowest column id) and the row's kappa at the given deficit. Throws
// Error when the row has no nonzero coefficient.
ColumnChoice kappa_cip(std::span<const CipRowEntry> row, double deficit,
                       std::span<const double> costs);

// Lossless embedding: element i becomes row i, set j becomes column j with
// coefficient 1 wherever i is a member of j.
CipInstance set_system_to_cip(const SetSystem& sys);

}  // namespace rocover
