// Release gate: runs the named acceptance checks (all ten when none are
// named), prints one PASS/FAIL line per check, and exits nonzero on any
// failure.
#include <iostream>
#include <vector>

#include "rocover/acceptance.hpp"

int main(int argc, char** argv) {
  using namespace rocover;
  std::vector<CriterionResult> results;
  try {
    if (argc <= 1) {
      results = run_all_acceptance();
    } else {
      for (int i = 1; i < argc; ++i) results.push_back(run_acceptance(argv[i]));
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  bool all_passed = true;
  for (const CriterionResult& result : results) {
    std::cout << format_criterion_line(result) << "\n";
    all_passed = all_passed && result.passed;
  }
  return all_passed ? 0 : 1;
}
