#pragma once

#include <numbers>
#include <span>
#include <vector>

#include "rocover/instance.hpp"

namespace rocover {

// Potential constants for the supermartingale diagnostics:
//   phi = kPotentialC1 * kl + kPotentialC2 * beta * log(rho / beta).
inline constexpr double kPotentialC1 = 2.0;
inline constexpr double kPotentialC2 = 2.0 * std::numbers::e;

// Budget-normalized multiplicative-weights state: <costs, x> == beta after
// every update, and x is zero outside the support mask {j : costs[j] <= beta}.
struct FractionalState {
  std::vector<double> x;
  double beta = 0.0;
  std::vector<char> support;
};

// Cost-weighted generalized KL divergence
//   sum_j c_j * (x*_j * log(x*_j / x_j) - x*_j + x_j)
// with the 0 * log 0 = 0 convention. Nonnegative for any nonnegative inputs.
// Throws Error if some x*_j > 0 meets x_j == 0 (infinite divergence: the
// reference solution must stay inside the iterate's support).
double weighted_kl(std::span<const double> xstar, std::span<const double> x,
                   std::span<const double> costs);

// Scales x so that <costs, x> == beta. Throws Error when <costs, x> is zero
// or not finite (degenerate input).
FractionalState normalize_budget(std::span<const double> x, std::span<const double> costs,
                                 double beta);

// In-place rescale of an existing state to <costs, x> == beta.
void renormalize_budget(FractionalState& state, std::span<const double> costs);

double budget_dot(std::span<const double> x, std::span<const double> costs);

// rho = sum of kappa_v over the uncovered elements.
double compute_rho(std::span<const int> uncovered, std::span<const double> kappa_by_element);
double compute_rho(std::span<const char> covered, std::span<const double> kappa_by_element);

struct PotentialSnapshot {
  double kl_term = 0.0;
  double rho = 0.0;
  double phi = 0.0;
  double c1 = kPotentialC1;
  double c2 = kPotentialC2;
};

// phi from already-computed terms. Throws Error on rho <= 0 or beta <= 0
// (log domain).
PotentialSnapshot compute_potential(double kl_term, double rho, double beta,
                                    double c1 = kPotentialC1, double c2 = kPotentialC2);

}  // namespace rocover
