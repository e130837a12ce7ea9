// Release gate: runs the built-in golden suite and prints one line per check.
#include <cstdio>

#include "blowup/goldens.hpp"

int main() {
  int failures = 0;
  auto results = blowup::run_golden_suite();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& res = results[i];
    std::printf("%s criterion %zu: %s (%.0f ms)%s%s\n",
                res.passed ? "PASS" : "FAIL", i + 1, res.name.c_str(), res.ms,
                res.passed ? "" : " -- ", res.passed ? "" : res.detail.c_str());
    if (!res.passed) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
              results.size());
  return failures == 0 ? 0 : 1;
}
