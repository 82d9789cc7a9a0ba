#include "rocover/cip.hpp"

#include <algorithm>
#include <cmath>

namespace rocover {

FractionalState cip_init(std::span<const double> costs, double beta) {
  return loc_init(costs, beta);
}

CipRunner::CipRunner(const CipInstance& inst, double beta, CipOptions opts)
    : inst_(&inst), opts_(opts), state_(cip_init(inst.costs, beta)) {}

RoundRecord CipRunner::step(int round, int row, CipSolution& sol, RngStream& rng) {
  const auto& entries = inst_->rows[static_cast<std::size_t>(row)];
  const auto& costs = inst_->costs;
  double beta = state_.beta;

  RoundRecord rec;
  rec.round = round;
  rec.id = row;
  double deficit = row_deficit(entries, sol.z);
  rec.delta = deficit;

  double row_mass = 0.0;
  for (const auto& entry : entries) {
    row_mass += entry.coeff * state_.x[static_cast<std::size_t>(entry.col)];
  }
  rec.x_cov = row_mass;

  if (deficit <= kDeficitThreshold) {
    // Row already near-covered; record kappa at the current deficit for the trace.
    rec.kappa = deficit > 0.0 ? kappa_cip(entries, deficit, costs).kappa : 0.0;
    rec.uncovered = false;
    return rec;
  }

  rec.uncovered = true;
  ColumnChoice choice = kappa_cip(entries, deficit, costs);
  double kappa = choice.kappa;
  rec.kappa = kappa;
  ++sol.rounds_acted;

  // Randomized-rounding purchase of kappa / beta times the fractional state.
  for (std::size_t j = 0; j < state_.x.size(); ++j) {
    double xj = state_.x[j];
    if (xj <= 0.0) continue;
    double y = std::clamp(kappa * xj / beta, 0.0, kSampleClamp);
    auto base = static_cast<long long>(std::floor(y));
    long long count = base + (rng.bernoulli(y - static_cast<double>(base)) ? 1 : 0);
    if (count > 0) {
      sol.z[j] += count;
      double spent = costs[j] * static_cast<double>(count);
      sol.total_cost += spent;
      rec.sampled_cost += spent;
    }
  }

  // Reweight gated on the row value against the pre-round deficit.
  if (row_mass < deficit) {
    for (const auto& entry : entries) {
      auto j = static_cast<std::size_t>(entry.col);
      if (state_.x[j] <= 0.0 || entry.coeff <= 0.0) continue;
      double exponent = kappa * entry.coeff / costs[j];
      if (exponent > 1.0 + 1e-9) {
        throw Error("CipRunner::step: reweight exponent " + std::to_string(exponent) +
                    " exceeds 1 (kappa accounting is broken)");
      }
      state_.x[j] *= std::exp(exponent);
    }
    renormalize_budget(state_, costs);
  }

  // Backup purchase of the best cost-rate column, sized to clear the deficit.
  double backup_deficit = opts_.tight_backup ? row_deficit(entries, sol.z) : deficit;
  if (backup_deficit > 0.0) {
    double coeff = 0.0;
    for (const auto& entry : entries) {
      if (entry.col == choice.col) {
        coeff = entry.coeff;
        break;
      }
    }
    auto count = static_cast<long long>(std::ceil(backup_deficit / coeff));
    sol.z[static_cast<std::size_t>(choice.col)] += count;
    double spent = costs[static_cast<std::size_t>(choice.col)] * static_cast<double>(count);
    sol.total_cost += spent;
    rec.backup_cost = spent;
  }
  return rec;
}

CipRunResult cip_run(const CipInstance& inst, const ArrivalOrder& order, double beta,
                     RngStream& rng, CipOptions opts, const CipRoundObserver* observer) {
  if (static_cast<int>(order.size()) != inst.n) throw Error("cip_run: order length != rows");
  CipRunResult result{CipSolution(inst.m), {}};
  result.trace.reserve(order.size());
  CipRunner runner(inst, beta, opts);
  std::vector<char> arrived(static_cast<std::size_t>(inst.n), 0);
  for (std::size_t t = 0; t < order.size(); ++t) {
    int row = order[t];
    if (row < 0 || row >= inst.n || arrived[static_cast<std::size_t>(row)]) {
      throw Error("cip_run: order is not a permutation of the rows");
    }
    arrived[static_cast<std::size_t>(row)] = 1;
    RoundRecord rec = runner.step(static_cast<int>(t) + 1, row, result.sol, rng);
    result.trace.push_back(rec);
    if (observer) (*observer)(CipRunView{rec, runner.state(), result.sol});
  }
  return result;
}

std::vector<long long> scale_solution(std::span<const long long> z, int factor) {
  std::vector<long long> scaled(z.begin(), z.end());
  for (auto& v : scaled) v *= factor;
  return scaled;
}

FeasibilityReport feasibility_check(const CipInstance& inst, std::span<const long long> z,
                                    double threshold) {
  if (static_cast<int>(z.size()) != inst.m) throw Error("feasibility_check: dimension mismatch");
  FeasibilityReport report;
  for (int i = 0; i < inst.n; ++i) {
    double dot = 0.0;
    for (const auto& entry : inst.rows[static_cast<std::size_t>(i)]) {
      dot += entry.coeff * static_cast<double>(z[static_cast<std::size_t>(entry.col)]);
    }
    report.min_margin = std::min(report.min_margin, dot);
    if (dot < threshold) {
      report.feasible = false;
      report.violated_rows.push_back(i);
    }
  }
  return report;
}

}  // namespace rocover
