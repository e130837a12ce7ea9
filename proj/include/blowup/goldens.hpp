#ifndef BLOWUP_GOLDENS_HPP
#define BLOWUP_GOLDENS_HPP

#include <string>
#include <vector>

namespace blowup {

// One entry of the built-in golden suite (the nine release checks shared by
// the CLI --paper-check flag and the acceptance test binary).
struct GoldenResult {
  std::string name;
  bool passed = false;
  std::string detail;  // reason on failure, summary on success
  double ms = 0.0;
};

std::vector<GoldenResult> run_golden_suite();

}  // namespace blowup

#endif
