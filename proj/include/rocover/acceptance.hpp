#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rocover {

// One release-gate check: a named property of the algorithms measured at a
// pinned instance size, with the measured values in `detail`.
struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// The ten checks in gate order:
//   budget-invariant, kl-bound, supermartingale, bn-separation, log-growth,
//   simple-loc, cip-feasibility, batched-bound, crs-alpha, oracle-sanity.
std::vector<std::string_view> acceptance_names();

// Runs one check by name (throws Error on an unknown name). A check that
// throws internally is reported as failed, not propagated. Checks with a
// stated runtime limit fail when they exceed it.
CriterionResult run_acceptance(std::string_view name);

std::vector<CriterionResult> run_all_acceptance();

// "PASS <name>: <detail> (0.42s)" / "FAIL <name>: <detail> (0.42s)"
std::string format_criterion_line(const CriterionResult& result);

}  // namespace rocover
