#include "rocover/instance.hpp"

#include <algorithm>
#include <cmath>

namespace rocover {
namespace {

void check_members_sorted(const std::vector<int>& members, int n, int set_id,
                          std::vector<std::string>* report) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    int e = members[i];
    if (e < 0 || e >= n) {
      report->push_back("set " + std::to_string(set_id + 1) + ": element id " +
                        std::to_string(e + 1) + " out of range");
      return;
    }
    if (i > 0 && members[i] <= members[i - 1]) {
      report->push_back("set " + std::to_string(set_id + 1) +
                        ": members not sorted strictly ascending");
      return;
    }
  }
}

void check_costs(const std::vector<double>& costs, std::vector<std::string>* report) {
  for (std::size_t j = 0; j < costs.size(); ++j) {
    double c = costs[j];
    if (!(c > 0.0) || !std::isfinite(c)) {
      report->push_back("cost of set " + std::to_string(j + 1) +
                        " must be positive and finite");
    }
  }
}

}  // namespace

std::vector<std::string> validate(const SetSystem& sys) {
  std::vector<std::string> report;
  if (sys.n < 0 || sys.m < 0) report.push_back("n and m must be nonnegative");
  if (static_cast<int>(sys.members.size()) != sys.m) {
    report.push_back("member list count does not match m");
    return report;
  }
  if (static_cast<int>(sys.costs.size()) != sys.m) {
    report.push_back("cost count does not match m");
    return report;
  }
  check_costs(sys.costs, &report);
  std::vector<char> seen(static_cast<std::size_t>(std::max(sys.n, 0)), 0);
  for (int j = 0; j < sys.m; ++j) {
    check_members_sorted(sys.members[j], sys.n, j, &report);
    for (int e : sys.members[j]) {
      if (e >= 0 && e < sys.n) seen[static_cast<std::size_t>(e)] = 1;
    }
  }
  for (int v = 0; v < sys.n; ++v) {
    if (!seen[static_cast<std::size_t>(v)]) {
      report.push_back("element " + std::to_string(v + 1) + " is not covered by any set");
    }
  }
  return report;
}

std::vector<std::string> validate(const CipInstance& inst) {
  std::vector<std::string> report;
  if (inst.n < 0 || inst.m < 0) report.push_back("rows and cols must be nonnegative");
  if (static_cast<int>(inst.rows.size()) != inst.n) {
    report.push_back("row count does not match n");
    return report;
  }
  if (static_cast<int>(inst.costs.size()) != inst.m) {
    report.push_back("cost count does not match m");
    return report;
  }
  check_costs(inst.costs, &report);
  for (int i = 0; i < inst.n; ++i) {
    const auto& row = inst.rows[i];
    bool has_nonzero = false;
    for (std::size_t t = 0; t < row.size(); ++t) {
      const auto& entry = row[t];
      if (entry.col < 0 || entry.col >= inst.m) {
        report.push_back("row " + std::to_string(i + 1) + ": column id out of range");
        break;
      }
      if (t > 0 && row[t].col <= row[t - 1].col) {
        report.push_back("row " + std::to_string(i + 1) + ": columns not sorted strictly ascending");
        break;
      }
      if (!(entry.coeff >= 0.0 && entry.coeff <= 1.0) || !std::isfinite(entry.coeff)) {
        report.push_back("row " + std::to_string(i + 1) + ": coefficient " +
                         std::to_string(entry.coeff) + " out of range [0, 1]");
      }
      if (entry.coeff > 0.0) has_nonzero = true;
    }
    if (!has_nonzero) {
      report.push_back("row " + std::to_string(i + 1) + " has no positive coefficient");
    }
  }
  return report;
}

std::vector<std::string> validate(const BatchedInstance& inst) {
  std::vector<std::string> report = validate(inst.base);
  std::vector<int> hits(static_cast<std::size_t>(std::max(inst.base.n, 0)), 0);
  for (std::size_t b = 0; b < inst.batches.size(); ++b) {
    for (int e : inst.batches[b]) {
      if (e < 0 || e >= inst.base.n) {
        report.push_back("batch " + std::to_string(b + 1) + ": element id out of range");
      } else {
        ++hits[static_cast<std::size_t>(e)];
      }
    }
  }
  for (int v = 0; v < inst.base.n; ++v) {
    if (hits[static_cast<std::size_t>(v)] != 1) {
      report.push_back("batches do not partition the elements (element " +
                       std::to_string(v + 1) + " appears " +
                       std::to_string(hits[static_cast<std::size_t>(v)]) + " times)");
      break;
    }
  }
  return report;
}

IncidenceIndex build_incidence(const SetSystem& sys) {
  IncidenceIndex index;
  index.sets_of.assign(static_cast<std::size_t>(sys.n), {});
  for (int j = 0; j < sys.m; ++j) {
    for (int e : sys.members[j]) {
      index.sets_of[static_cast<std::size_t>(e)].push_back(j);
    }
  }
  // Set ids were appended in ascending j, so each list is already sorted.
  return index;
}

SetChoice cheapest_covering_set(const IncidenceIndex& index,
                                std::span<const double> costs, int v) {
  if (v < 0 || v >= static_cast<int>(index.sets_of.size())) {
    throw Error("cheapest_covering_set: element id out of range");
  }
  const auto& sets = index.sets_of[static_cast<std::size_t>(v)];
  if (sets.empty()) {
    throw Error("cheapest_covering_set: element " + std::to_string(v + 1) +
                " is not covered by any set");
  }
  SetChoice best{sets.front(), costs[static_cast<std::size_t>(sets.front())]};
  for (int j : sets) {
    double c = costs[static_cast<std::size_t>(j)];
    if (c < best.kappa) best = SetChoice{j, c};
  }
  return best;
}

std::vector<double> element_kappas(const SetSystem& sys, const IncidenceIndex& index) {
  std::vector<double> kappa(static_cast<std::size_t>(sys.n));
  for (int v = 0; v < sys.n; ++v) {
    kappa[static_cast<std::size_t>(v)] = cheapest_covering_set(index, sys.costs, v).kappa;
  }
  return kappa;
}

double row_deficit(std::span<const CipRowEntry> row, std::span<const long long> z) {
  double dot = 0.0;
  for (const auto& entry : row) {
    dot += entry.coeff * static_cast<double>(z[static_cast<std::size_t>(entry.col)]);
  }
  return std::max(0.0, 1.0 - dot);
}

ColumnChoice kappa_cip(std::span<const CipRowEntry> row, double deficit,
                       std::span<const double> costs) {
  ColumnChoice best;
  double best_rate = 0.0;
  for (const auto& entry : row) {
    if (entry.coeff <= 0.0) continue;
    double rate = costs[static_cast<std::size_t>(entry.col)] / entry.coeff;
    if (best.col < 0 || rate < best_rate) {
      best.col = entry.col;
      best_rate = rate;
    }
  }
  if (best.col < 0) throw Error("kappa_cip: row has no positive coefficient");
  best.kappa = deficit * best_rate;
  return best;
}

CipInstance set_system_to_cip(const SetSystem& sys) {
  CipInstance inst;
  inst.n = sys.n;
  inst.m = sys.m;
  inst.costs = sys.costs;
  inst.rows.assign(static_cast<std::size_t>(sys.n), {});
  for (int j = 0; j < sys.m; ++j) {
    for (int e : sys.members[j]) {
      inst.rows[static_cast<std::size_t>(e)].push_back(CipRowEntry{j, 1.0});
    }
  }
  return inst;
}

}  // namespace rocover
