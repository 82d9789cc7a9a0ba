#include "rocover/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "rocover/format.hpp"

namespace rocover {
namespace {

constexpr double kFeasibilityTolerance = 1e-9;

void check_reference_budget(std::span<const double> xstar, std::span<const double> costs,
                            double beta) {
  for (double v : xstar) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error("reference weights must be nonnegative");
  }
  double spend = budget_dot(xstar, costs);
  if (spend > beta * (1.0 + kFeasibilityTolerance)) {
    throw Error("reference weights exceed the budget: <c, x*> = " + format_double(spend) +
                " > beta = " + format_double(beta));
  }
}

void check_reference_covers(const SetSystem& sys, const IncidenceIndex& index,
                            std::span<const double> xstar) {
  if (xstar.size() != static_cast<std::size_t>(sys.m)) {
    throw Error("reference weights have the wrong dimension");
  }
  for (int v = 0; v < sys.n; ++v) {
    double mass = 0.0;
    for (int j : index.sets_of[static_cast<std::size_t>(v)]) {
      mass += xstar[static_cast<std::size_t>(j)];
    }
    if (mass < 1.0 - kFeasibilityTolerance) {
      throw Error("reference weights do not cover element " + std::to_string(v + 1));
    }
  }
}

double phi_or_neg_inf(double kl, double rho, double beta, double c1, double c2) {
  if (rho <= 0.0) return -std::numeric_limits<double>::infinity();
  return compute_potential(kl, rho, beta, c1, c2).phi;
}

// rho for covering IPs: sum of deficit * best cost rate over rows whose
// deficit still exceeds the action threshold.
double cip_rho(const CipInstance& inst, std::span<const long long> z) {
  double rho = 0.0;
  for (int i = 0; i < inst.n; ++i) {
    const auto& row = inst.rows[static_cast<std::size_t>(i)];
    double deficit = row_deficit(row, z);
    if (deficit > kDeficitThreshold) {
      rho += kappa_cip(row, deficit, inst.costs).kappa;
    }
  }
  return rho;
}

}  // namespace

Trace trace_loc_run(const SetSystem& sys, const IncidenceIndex& index, const ArrivalOrder& order,
                    double beta, RngStream& rng, std::span<const double> xstar, LocOptions opts) {
  check_reference_covers(sys, index, xstar);
  check_reference_budget(xstar, sys.costs, beta);
  std::vector<double> kappa = element_kappas(sys, index);

  Trace trace;
  trace.beta = beta;
  FractionalState initial = loc_init(sys.costs, beta);
  trace.initial_kl = weighted_kl(xstar, initial.x, sys.costs);
  trace.initial_rho = 0.0;
  for (double k : kappa) trace.initial_rho += k;
  trace.initial_phi = phi_or_neg_inf(trace.initial_kl, trace.initial_rho, beta, trace.c1, trace.c2);
  trace.rows.reserve(order.size());

  double last_kl = trace.initial_kl;
  RoundObserver observer = [&](const RunView& view) {
    TraceRow row;
    row.rec = view.record;
    // The weights only move on reweighting rounds; reusing the previous kl
    // elsewhere keeps "no update" rounds at exactly zero divergence change.
    if (view.record.uncovered && view.record.x_cov < view.record.delta) {
      last_kl = weighted_kl(xstar, view.state.x, sys.costs);
    }
    row.kl = last_kl;
    row.rho = compute_rho(std::span<const char>(view.cover.covered), kappa);
    row.phi = phi_or_neg_inf(row.kl, row.rho, beta, trace.c1, trace.c2);
    trace.rows.push_back(row);
  };
  loc_run(sys, index, order, beta, rng, opts, &observer);
  return trace;
}

Trace trace_cip_run(const CipInstance& inst, const ArrivalOrder& order, double beta,
                    RngStream& rng, std::span<const double> xstar, CipOptions opts) {
  if (xstar.size() != static_cast<std::size_t>(inst.m)) {
    throw Error("reference weights have the wrong dimension");
  }
  for (int i = 0; i < inst.n; ++i) {
    double dot = 0.0;
    for (const auto& entry : inst.rows[static_cast<std::size_t>(i)]) {
      dot += entry.coeff * xstar[static_cast<std::size_t>(entry.col)];
    }
    if (dot < 1.0 - kFeasibilityTolerance) {
      throw Error("reference weights do not satisfy row " + std::to_string(i + 1));
    }
  }
  check_reference_budget(xstar, inst.costs, beta);

  Trace trace;
  trace.beta = beta;
  FractionalState initial = cip_init(inst.costs, beta);
  trace.initial_kl = weighted_kl(xstar, initial.x, inst.costs);
  {
    std::vector<long long> zero(static_cast<std::size_t>(inst.m), 0);
    trace.initial_rho = cip_rho(inst, zero);
  }
  trace.initial_phi = phi_or_neg_inf(trace.initial_kl, trace.initial_rho, beta, trace.c1, trace.c2);
  trace.rows.reserve(order.size());

  double last_kl = trace.initial_kl;
  CipRoundObserver observer = [&](const CipRunView& view) {
    TraceRow row;
    row.rec = view.record;
    if (view.record.uncovered && view.record.x_cov < view.record.delta) {
      last_kl = weighted_kl(xstar, view.state.x, inst.costs);
    }
    row.kl = last_kl;
    row.rho = cip_rho(inst, view.sol.z);
    row.phi = phi_or_neg_inf(row.kl, row.rho, beta, trace.c1, trace.c2);
    trace.rows.push_back(row);
  };
  cip_run(inst, order, beta, rng, opts, &observer);
  return trace;
}

std::vector<KlViolation> kl_bound_check(const Trace& trace) {
  constexpr double kSlack = 1e-9;
  const double factor = std::numbers::e - 1.0;
  std::vector<KlViolation> violations;
  double prev_kl = trace.initial_kl;
  for (const auto& row : trace.rows) {
    if (row.rec.uncovered && row.rec.x_cov < row.rec.delta) {
      double delta_kl = row.kl - prev_kl;
      double bound = factor * row.rec.kappa * std::min(row.rec.x_cov, row.rec.delta) -
                     row.rec.kappa + kSlack;
      if (delta_kl > bound) {
        violations.push_back(KlViolation{row.rec.round, delta_kl, bound});
      }
    }
    prev_kl = row.kl;
  }
  return violations;
}

std::vector<LocSnapshot> capture_snapshots(const SetSystem& sys, const IncidenceIndex& index,
                                           const ArrivalOrder& order, double beta, RngStream& rng,
                                           std::span<const int> rounds, LocOptions opts) {
  std::vector<LocSnapshot> snapshots;
  std::size_t next = 0;
  RoundObserver observer = [&](const RunView& view) {
    while (next < rounds.size() && rounds[next] == view.record.round) {
      snapshots.push_back(LocSnapshot{view.state.x, view.cover.covered, beta, view.record.round});
      ++next;
    }
  };
  loc_run(sys, index, order, beta, rng, opts, &observer);
  return snapshots;
}

ProbeResult supermartingale_probe(const SetSystem& sys, const IncidenceIndex& index,
                                  const LocSnapshot& snapshot, std::span<const double> xstar,
                                  int samples, RngStream& rng) {
  if (samples < 2) throw Error("supermartingale_probe: need at least 2 samples");
  check_reference_covers(sys, index, xstar);
  check_reference_budget(xstar, sys.costs, snapshot.beta);
  const auto& costs = sys.costs;
  double beta = snapshot.beta;

  std::vector<double> kappa = element_kappas(sys, index);
  std::vector<int> uncovered;
  for (int v = 0; v < sys.n; ++v) {
    if (!snapshot.covered[static_cast<std::size_t>(v)]) uncovered.push_back(v);
  }
  if (uncovered.empty()) {
    throw Error("supermartingale_probe: state is fully covered");
  }

  double kl_now = weighted_kl(xstar, snapshot.x, costs);
  double rho_now = compute_rho(std::span<const char>(snapshot.covered), kappa);
  PotentialSnapshot pot = compute_potential(kl_now, rho_now, beta);
  if (pot.phi < 0.0) {
    throw Error("supermartingale_probe: potential is negative at this state");
  }

  double kappa_floor = *std::min_element(kappa.begin(), kappa.end());
  std::vector<char> covered_scratch = snapshot.covered;
  std::vector<int> touched;

  double mean_sum = 0.0;
  double var_sum = 0.0;
  for (std::size_t ui = 0; ui < uncovered.size(); ++ui) {
    int v = uncovered[ui];
    SetChoice cheapest = cheapest_covering_set(index, costs, v);
    double kv = cheapest.kappa;

    double mass = 0.0;
    double ref_mass = 0.0;
    for (int j : index.sets_of[static_cast<std::size_t>(v)]) {
      mass += snapshot.x[static_cast<std::size_t>(j)];
      ref_mass += xstar[static_cast<std::size_t>(j)];
    }

    // Divergence change is deterministic given the arrival: log of the
    // normalizer minus kappa times the reference mass at v.
    double delta_kl = 0.0;
    if (mass < 1.0) {
      double normalizer = 0.0;
      for (int j : index.sets_of[static_cast<std::size_t>(v)]) {
        auto idx = static_cast<std::size_t>(j);
        if (snapshot.x[idx] <= 0.0) continue;
        normalizer += costs[idx] * snapshot.x[idx] * (std::exp(kv / costs[idx]) - 1.0);
      }
      delta_kl = budget_dot(xstar, costs) * std::log1p(normalizer / beta) - kv * ref_mass;
    }

    // Expected purchase cost: the sampling pass pays c_j * min(kv x_j / b, 1)
    // in expectation, the backup pays kappa.
    double expected_cost = kv;
    for (std::size_t j = 0; j < snapshot.x.size(); ++j) {
      if (snapshot.x[j] <= 0.0) continue;
      expected_cost += costs[j] * std::min(kv * snapshot.x[j] / beta, 1.0);
    }

    // Sampled change in log rho, including the backup set's coverage.
    RngStream element_rng = rng.derive(static_cast<std::uint64_t>(v), 0x70726f6265ULL);
    double dlog_sum = 0.0;
    double dlog_sq = 0.0;
    for (int s = 0; s < samples; ++s) {
      double rho_after = rho_now;
      touched.clear();
      auto cover_set = [&](int j) {
        for (int e : sys.members[static_cast<std::size_t>(j)]) {
          auto idx = static_cast<std::size_t>(e);
          if (!covered_scratch[idx]) {
            covered_scratch[idx] = 1;
            rho_after -= kappa[idx];
            touched.push_back(e);
          }
        }
      };
      for (std::size_t j = 0; j < snapshot.x.size(); ++j) {
        if (snapshot.x[j] <= 0.0) continue;
        double p = std::min(kv * snapshot.x[j] / beta, 1.0);
        if (element_rng.bernoulli(p)) cover_set(static_cast<int>(j));
      }
      cover_set(cheapest.set);
      for (int e : touched) covered_scratch[static_cast<std::size_t>(e)] = 0;
      // A fully covered draw would send the potential to -inf; flooring rho
      // at the cheapest element keeps the estimate finite and conservative.
      rho_after = std::max(rho_after, std::min(kappa_floor, rho_now));
      double dlog = std::log(rho_after / rho_now);
      dlog_sum += dlog;
      dlog_sq += dlog * dlog;
    }
    double dlog_mean = dlog_sum / samples;
    double dlog_var = std::max(0.0, (dlog_sq - dlog_sum * dlog_sum / samples) / (samples - 1));

    mean_sum += kPotentialC1 * delta_kl + kPotentialC2 * beta * dlog_mean + expected_cost;
    var_sum += dlog_var / samples;
  }

  ProbeResult result;
  result.uncovered = static_cast<int>(uncovered.size());
  result.phi = pot.phi;
  result.mean = mean_sum / static_cast<double>(uncovered.size());
  result.se = kPotentialC2 * beta * std::sqrt(var_sum) / static_cast<double>(uncovered.size());
  return result;
}

std::string trace_csv(const Trace& trace) {
  std::string out = "t,id,uncovered,kappa,Xv,sampled_cost,backup_cost,kl,rho,phi\n";
  for (const auto& row : trace.rows) {
    out += std::to_string(row.rec.round);
    out += ',';
    out += std::to_string(row.rec.id + 1);
    out += ',';
    out += row.rec.uncovered ? '1' : '0';
    for (double value : {row.rec.kappa, row.rec.x_cov, row.rec.sampled_cost,
                         row.rec.backup_cost, row.kl, row.rho, row.phi}) {
      out += ',';
      out += format_double_sig(value, 12);
    }
    out += '\n';
  }
  return out;
}

std::vector<TraceRow> parse_trace_csv(std::string_view text) {
  auto lines = split_char(text, '\n');
  if (lines.empty() || lines[0] != "t,id,uncovered,kappa,Xv,sampled_cost,backup_cost,kl,rho,phi") {
    throw Error("trace csv: bad header");
  }
  std::vector<TraceRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split_char(lines[i], ',');
    if (fields.size() != 10) throw Error("trace csv: expected 10 fields per row");
    TraceRow row;
    row.rec.round = static_cast<int>(parse_int(fields[0]));
    row.rec.id = static_cast<int>(parse_int(fields[1])) - 1;
    row.rec.uncovered = parse_int(fields[2]) != 0;
    row.rec.kappa = parse_double(fields[3]);
    row.rec.x_cov = parse_double(fields[4]);
    row.rec.sampled_cost = parse_double(fields[5]);
    row.rec.backup_cost = parse_double(fields[6]);
    row.kl = parse_double(fields[7]);
    row.rho = parse_double(fields[8]);
    row.phi = parse_double(fields[9]);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rocover
