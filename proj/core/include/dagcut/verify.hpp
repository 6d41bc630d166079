#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dagcut {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs the end-to-end verification battery: the numeric ratio constants, the
// certificate bounds, feasibility and per-edge probability properties, LP
// agreement against full enumeration, rounding ratios against the exact
// solver, and the derandomizer. Each check is self-timed; checks with a
// stated wall-clock budget fail when they exceed it.
std::vector<CriterionResult> run_acceptance(std::uint64_t base_seed = 0,
                                            std::ostream* progress = nullptr);

// One "PASS criterion N: ..." / "FAIL criterion N: ..." line per result.
void print_results(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace dagcut
