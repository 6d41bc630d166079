#pragma once

#include <cstdint>
#include <vector>

#include "dagcut/graph.hpp"
#include "dagcut/lp.hpp"

namespace dagcut {

struct ExactResult {
  std::vector<int> deleted;
  double cost = 0.0;
  long nodes_explored = 0;
  bool certified = true;  // false when the node budget ran out first
};

// Exact DED(k) by branch and bound: each node picks a surviving k-path and
// branches on which of its edges gets deleted (partitioned by the first
// deleted edge, so siblings forbid the earlier ones). The lower bound is a
// greedy edge-disjoint k-path packing priced at each packed path's cheapest
// deletable edge. Desk-scale only; when the budget runs out the incumbent is
// returned with certified=false.
ExactResult exact_solve(const DagInstance& inst, long budget_nodes = 1'000'000);

// Saturating count of exactly-k-edge paths (DP over layers).
std::uint64_t count_k_paths(const DagInstance& inst);

// All exactly-k-edge paths in lexicographic edge-id order. Throws
// TooManyPaths when the DP count exceeds the cap.
std::vector<PathWitness> enumerate_k_paths(const DagInstance& inst,
                                           std::uint64_t cap = 1'000'000);

// Reference LP optimum with every k-path row materialized; shares the
// simplex core with the cutting-plane path so discrepancies point at the row
// generation, not the pivoting.
FractionalSolution full_lp(const DagInstance& inst, std::uint64_t path_cap = 1'000'000);

}  // namespace dagcut
