#include "rocover/kernel.hpp"

#include <cmath>

namespace rocover {

double weighted_kl(std::span<const double> xstar, std::span<const double> x,
                   std::span<const double> costs) {
  if (xstar.size() != x.size() || x.size() != costs.size()) {
    throw Error("weighted_kl: dimension mismatch");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double ref = xstar[j];
    if (ref < 0.0 || x[j] < 0.0) throw Error("weighted_kl: negative entry");
    double term = x[j] - ref;
    if (ref > 0.0) {
      if (x[j] <= 0.0) {
        throw Error("weighted_kl: reference mass outside iterate support (column " +
                    std::to_string(j + 1) + ")");
      }
      term += ref * std::log(ref / x[j]);
    }
    total += costs[j] * term;
  }
  return total;
}

double budget_dot(std::span<const double> x, std::span<const double> costs) {
  double dot = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) dot += costs[j] * x[j];
  return dot;
}

FractionalState normalize_budget(std::span<const double> x, std::span<const double> costs,
                                 double beta) {
  if (x.size() != costs.size()) throw Error("normalize_budget: dimension mismatch");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error("normalize_budget: beta must be positive");
  double dot = budget_dot(x, costs);
  if (!(dot > 0.0) || !std::isfinite(dot)) {
    throw Error("normalize_budget: <costs, x> must be positive and finite");
  }
  FractionalState state;
  state.beta = beta;
  state.x.assign(x.begin(), x.end());
  double scale = beta / dot;
  for (double& v : state.x) v *= scale;
  state.support.resize(costs.size());
  for (std::size_t j = 0; j < costs.size(); ++j) {
    state.support[j] = costs[j] <= beta ? 1 : 0;
  }
  return state;
}

void renormalize_budget(FractionalState& state, std::span<const double> costs) {
  double dot = budget_dot(state.x, costs);
  if (!(dot > 0.0) || !std::isfinite(dot)) {
    throw Error("renormalize_budget: <costs, x> must be positive and finite");
  }
  double scale = state.beta / dot;
  for (double& v : state.x) v *= scale;
}

double compute_rho(std::span<const int> uncovered, std::span<const double> kappa_by_element) {
  double rho = 0.0;
  for (int v : uncovered) rho += kappa_by_element[static_cast<std::size_t>(v)];
  return rho;
}

double compute_rho(std::span<const char> covered, std::span<const double> kappa_by_element) {
  double rho = 0.0;
  for (std::size_t v = 0; v < covered.size(); ++v) {
    if (!covered[v]) rho += kappa_by_element[v];
  }
  return rho;
}

PotentialSnapshot compute_potential(double kl_term, double rho, double beta, double c1,
                                    double c2) {
  if (!(rho > 0.0)) throw Error("compute_potential: rho must be positive");
  if (!(beta > 0.0)) throw Error("compute_potential: beta must be positive");
  PotentialSnapshot snap;
  snap.kl_term = kl_term;
  snap.rho = rho;
  snap.c1 = c1;
  snap.c2 = c2;
  snap.phi = c1 * kl_term + c2 * beta * std::log(rho / beta);
  return snap;
}

}  // namespace rocover
