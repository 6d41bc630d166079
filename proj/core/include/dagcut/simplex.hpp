#pragma once

#include <span>
#include <vector>

namespace dagcut {

struct SimplexResult {
  std::vector<double> x;      // primal covering solution, per variable
  std::vector<double> duals;  // one value per covering row
  double objective = 0.0;
  int pivots = 0;
};

// Solves the covering LP  min c'x  s.t.  sum_{e in row} x_e >= 1, x >= 0,
// where every row is a 0/1 incidence list of variable ids.
//
// Internally runs primal simplex on the packing dual (max 1'y, A'y <= c,
// y >= 0): the slack basis is feasible there from the start, so no phase-1 is
// needed, and the covering primal is read off the final multipliers. Dantzig
// pricing with a permanent switch to Bland's rule after 500 degenerate pivots
// guarantees termination.
SimplexResult restricted_simplex(std::span<const double> costs,
                                 const std::vector<std::vector<int>>& rows,
                                 double tol = 1e-9);

}  // namespace dagcut
