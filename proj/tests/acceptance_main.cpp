// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit when
// any criterion fails. Run via `ctest -R acceptance` or directly.
#include <cstdio>
#include <iostream>

#include "dagcut/verify.hpp"

int main() {
  std::ios::sync_with_stdio(false);
  const auto results = dagcut::run_acceptance(0, &std::cout);
  int failed = 0;
  for (const auto& r : results) {
    if (!r.pass) ++failed;
  }
  if (failed > 0) {
    std::cout << failed << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
