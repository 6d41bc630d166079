#include "dagcut/lp.hpp"

#include <algorithm>
#include <cmath>

#include "dagcut/simplex.hpp"

namespace dagcut {

double solution_cost(const DagInstance& inst, const std::vector<double>& x) {
  double s = 0.0;
  for (int e = 0; e < inst.edge_count(); ++e) {
    s += inst.edge(e).cost * x[static_cast<std::size_t>(e)];
  }
  return s;
}

namespace {

// Scale up until the separation oracle certifies all k-paths at weight >= 1,
// then clamp. Clamping to 1 never breaks covering: any path through a
// clamped edge already has weight >= 1 from that edge alone.
void finalize(const DagInstance& inst, std::vector<double>& x) {
  for (double& v : x) v = std::clamp(v, 0.0, 1.0);
  for (int pass = 0; pass < 4; ++pass) {
    auto wit = min_weight_k_path(inst, x);
    if (!wit || wit->weight >= 1.0) break;
    if (wit->weight <= 1e-12) break;  // cannot rescale from ~0
    const double scale = 1.0 / wit->weight;
    for (double& v : x) v = std::min(1.0, v * scale);
  }
}

}  // namespace

FractionalSolution solve_lp(const DagInstance& inst, LpOptions opts) {
  const int m = inst.edge_count();
  const int max_rounds = opts.max_rounds > 0 ? opts.max_rounds : 10 * std::max(1, m);

  std::vector<double> costs(static_cast<std::size_t>(m));
  for (int e = 0; e < m; ++e) costs[static_cast<std::size_t>(e)] = inst.edge(e).cost;

  FractionalSolution sol;
  sol.x.assign(static_cast<std::size_t>(m), 0.0);
  sol.status = LpStatus::IterationLimit;

  std::vector<std::vector<int>> rows;
  for (int round = 0; round < max_rounds; ++round) {
    auto wit = min_weight_k_path(inst, sol.x);
    sol.iterations = round + 1;
    if (!wit || wit->weight >= 1.0 - opts.tol) {
      sol.status = LpStatus::Optimal;
      break;
    }
    rows.push_back(wit->edge_ids);
    sol.active_constraints.push_back(std::move(*wit));
    SimplexResult res = restricted_simplex(costs, rows, opts.tol);
    sol.x = std::move(res.x);
    sol.objective_trace.push_back(res.objective);
  }

  if (sol.status == LpStatus::Optimal) {
    finalize(inst, sol.x);
  } else {
    for (double& v : sol.x) v = std::clamp(v, 0.0, 1.0);
  }
  sol.objective = solution_cost(inst, sol.x);
  return sol;
}

}  // namespace dagcut
