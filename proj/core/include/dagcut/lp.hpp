#pragma once

#include <vector>

#include "dagcut/graph.hpp"

namespace dagcut {

enum class LpStatus { Optimal, IterationLimit };

struct FractionalSolution {
  std::vector<double> x;                        // per edge, clamped into [0,1]
  double objective = 0.0;                       // c(x)
  std::vector<PathWitness> active_constraints;  // rows generated / used
  int iterations = 0;                           // separation rounds run
  LpStatus status = LpStatus::Optimal;
  std::vector<double> objective_trace;          // restricted objective per round
};

struct LpOptions {
  int max_rounds = 0;   // 0 means 10*m
  double tol = 1e-9;
};

// Solves min c'x  s.t.  sum_{e in P} x_e >= 1 for every k-edge path P, x >= 0
// by row generation: repeatedly add the minimum-weight violated path from the
// separation oracle and re-solve the restricted covering LP. On optimal exit
// the returned x is rescaled so a fresh separation call certifies every
// k-path at weight >= 1 (up to double rounding), which downstream rounding
// relies on.
FractionalSolution solve_lp(const DagInstance& inst, LpOptions opts = {});

double solution_cost(const DagInstance& inst, const std::vector<double>& x);

}  // namespace dagcut
