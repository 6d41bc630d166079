#include "dagcut/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dagcut/errors.hpp"
#include "dagcut/simplex.hpp"

namespace dagcut {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BranchState {
  const DagInstance& inst;
  long budget;
  long nodes = 0;
  bool truncated = false;
  std::vector<char> deleted;
  std::vector<char> forbidden;
  double cost = 0.0;
  std::vector<int> best_set;
  double best_cost = kInf;

  explicit BranchState(const DagInstance& g, long b)
      : inst(g),
        budget(b),
        deleted(static_cast<std::size_t>(g.edge_count()), 0),
        forbidden(static_cast<std::size_t>(g.edge_count()), 0) {}

  // Greedy edge-disjoint packing of surviving k-paths; each packed path needs
  // at least its cheapest deletable edge removed. Returns +inf when some
  // surviving path has every edge forbidden (the node cannot be completed).
  double lower_bound() {
    std::vector<char> mask = deleted;
    double bound = 0.0;
    while (true) {
      auto wit = min_weight_k_path_masked(inst, {}, mask);
      if (!wit) return bound;
      double cheapest = kInf;
      for (int id : wit->edge_ids) {
        mask[static_cast<std::size_t>(id)] = 1;
        if (!forbidden[static_cast<std::size_t>(id)]) {
          cheapest = std::min(cheapest, inst.edge(id).cost);
        }
      }
      if (cheapest == kInf) return kInf;
      bound += cheapest;
    }
  }

  void record_solution() {
    if (cost < best_cost - 1e-12) {
      best_cost = cost;
      best_set.clear();
      for (int e = 0; e < inst.edge_count(); ++e) {
        if (deleted[static_cast<std::size_t>(e)]) best_set.push_back(e);
      }
    }
  }

  void search() {
    if (truncated) return;
    if (++nodes > budget) {
      truncated = true;
      return;
    }
    auto wit = min_weight_k_path_masked(inst, {}, deleted);
    if (!wit) {
      record_solution();
      return;
    }
    if (cost + lower_bound() >= best_cost - 1e-12) return;

    // Partition by the first deleted edge of the violated path: child i
    // deletes edge i and keeps (forbids deleting) edges 0..i-1.
    for (std::size_t i = 0; i < wit->edge_ids.size(); ++i) {
      const int id = wit->edge_ids[i];
      if (forbidden[static_cast<std::size_t>(id)]) continue;
      deleted[static_cast<std::size_t>(id)] = 1;
      cost += inst.edge(id).cost;
      search();
      cost -= inst.edge(id).cost;
      deleted[static_cast<std::size_t>(id)] = 0;
      forbidden[static_cast<std::size_t>(id)] = 1;
      if (truncated) break;
    }
    for (std::size_t i = 0; i < wit->edge_ids.size(); ++i) {
      forbidden[static_cast<std::size_t>(wit->edge_ids[i])] = 0;
    }
  }
};

}  // namespace

ExactResult exact_solve(const DagInstance& inst, long budget_nodes) {
  BranchState st(inst, budget_nodes);
  // Deleting everything is always feasible for k >= 1.
  st.best_set.resize(static_cast<std::size_t>(inst.edge_count()));
  for (int e = 0; e < inst.edge_count(); ++e) st.best_set[static_cast<std::size_t>(e)] = e;
  st.best_cost = 0.0;
  for (int e = 0; e < inst.edge_count(); ++e) st.best_cost += inst.edge(e).cost;

  st.search();

  ExactResult out;
  out.deleted = std::move(st.best_set);
  out.cost = st.best_cost;
  out.nodes_explored = st.nodes;
  out.certified = !st.truncated;
  return out;
}

std::uint64_t count_k_paths(const DagInstance& inst) {
  const int n = inst.vertex_count();
  const int k = inst.k();
  constexpr std::uint64_t kCap = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> prev(static_cast<std::size_t>(n), 1);
  std::vector<std::uint64_t> cur(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < k; ++j) {
    std::fill(cur.begin(), cur.end(), 0);
    for (const Edge& e : inst.edges()) {
      const std::uint64_t add = prev[static_cast<std::size_t>(e.tail)];
      std::uint64_t& slot = cur[static_cast<std::size_t>(e.head)];
      slot = (slot > kCap - add) ? kCap : slot + add;
    }
    std::swap(prev, cur);
  }
  std::uint64_t total = 0;
  for (std::uint64_t c : prev) total = (total > kCap - c) ? kCap : total + c;
  return total;
}

namespace {

void extend_path(const DagInstance& inst, const std::vector<std::vector<int>>& out_edges,
                 const std::vector<int>& max_remaining, std::vector<int>& edge_stack,
                 std::vector<int>& vertex_stack, std::vector<PathWitness>& out,
                 std::uint64_t cap) {
  const int k = inst.k();
  if (static_cast<int>(edge_stack.size()) == k) {
    if (out.size() >= cap) raise(ErrorCode::TooManyPaths, "k-path enumeration cap exceeded");
    PathWitness w;
    w.vertices = vertex_stack;
    w.edge_ids = edge_stack;
    w.weight = 0.0;
    out.push_back(std::move(w));
    return;
  }
  const int v = vertex_stack.back();
  const int need = k - static_cast<int>(edge_stack.size());
  for (int id : out_edges[static_cast<std::size_t>(v)]) {
    const int h = inst.edge(id).head;
    if (max_remaining[static_cast<std::size_t>(h)] < need - 1) continue;
    edge_stack.push_back(id);
    vertex_stack.push_back(h);
    extend_path(inst, out_edges, max_remaining, edge_stack, vertex_stack, out, cap);
    edge_stack.pop_back();
    vertex_stack.pop_back();
  }
}

}  // namespace

std::vector<PathWitness> enumerate_k_paths(const DagInstance& inst, std::uint64_t cap) {
  if (count_k_paths(inst) > cap) {
    raise(ErrorCode::TooManyPaths, "instance has more k-paths than the enumeration cap");
  }
  const int n = inst.vertex_count();
  std::vector<std::vector<int>> out_edges(static_cast<std::size_t>(n));
  for (int id = 0; id < inst.edge_count(); ++id) {
    out_edges[static_cast<std::size_t>(inst.edge(id).tail)].push_back(id);
  }
  // Longest path length from each vertex, for dead-end pruning.
  std::vector<int> max_remaining(static_cast<std::size_t>(n), 0);
  const auto& topo = inst.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    int best = 0;
    for (int id : out_edges[static_cast<std::size_t>(*it)]) {
      best = std::max(best, 1 + max_remaining[static_cast<std::size_t>(inst.edge(id).head)]);
    }
    max_remaining[static_cast<std::size_t>(*it)] = best;
  }

  std::vector<PathWitness> out;
  std::vector<int> edge_stack, vertex_stack;
  for (int v = 0; v < n; ++v) {
    if (max_remaining[static_cast<std::size_t>(v)] < inst.k()) continue;
    vertex_stack.assign(1, v);
    edge_stack.clear();
    extend_path(inst, out_edges, max_remaining, edge_stack, vertex_stack, out, cap);
  }
  return out;
}

FractionalSolution full_lp(const DagInstance& inst, std::uint64_t path_cap) {
  std::vector<PathWitness> paths = enumerate_k_paths(inst, path_cap);

  FractionalSolution sol;
  sol.iterations = 1;
  sol.status = LpStatus::Optimal;
  sol.x.assign(static_cast<std::size_t>(inst.edge_count()), 0.0);
  if (paths.empty()) return sol;

  std::vector<double> costs(static_cast<std::size_t>(inst.edge_count()));
  for (int e = 0; e < inst.edge_count(); ++e) costs[static_cast<std::size_t>(e)] = inst.edge(e).cost;
  std::vector<std::vector<int>> rows;
  rows.reserve(paths.size());
  for (const auto& p : paths) rows.push_back(p.edge_ids);

  SimplexResult res = restricted_simplex(costs, rows, 1e-9);
  sol.x = std::move(res.x);
  for (double& v : sol.x) v = std::clamp(v, 0.0, 1.0);
  sol.objective_trace.push_back(res.objective);
  sol.active_constraints = std::move(paths);
  sol.objective = solution_cost(inst, sol.x);
  return sol;
}

}  // namespace dagcut
