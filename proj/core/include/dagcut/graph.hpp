#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dagcut {

struct Edge {
  int tail = 0;
  int head = 0;
  double cost = 0.0;
};

// A directed path with exactly k edges, as found by the separation oracle.
struct PathWitness {
  std::vector<int> vertices;  // k+1 vertices
  std::vector<int> edge_ids;  // k edge ids, consecutive
  double weight = 0.0;        // sum of the per-edge values handed to the oracle
};

// Weighted DAG with the path-length bound k. Immutable after construction and
// safe to share across threads; all per-call scratch lives in the callers.
class DagInstance {
 public:
  // Validates endpoints, costs, acyclicity (topological sort) and k range.
  // Parallel edges are kept as distinct deletable objects.
  DagInstance(int n, std::vector<Edge> edges, int k);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int k() const { return k_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
  const std::vector<int>& topological_order() const { return topo_; }

  double total_cost(std::span<const int> edge_ids) const;

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> topo_;
};

inline DagInstance build_instance(int n, std::vector<Edge> edges, int k) {
  return DagInstance(n, std::move(edges), k);
}

// Minimum-x-weight path with exactly k edges, or nullopt when no k-edge path
// exists. DP over edge layers, O(k*m); ties broken toward the smallest
// predecessor edge id so cutting-plane runs are deterministic.
std::optional<PathWitness> min_weight_k_path(const DagInstance& inst,
                                             std::span<const double> x);

// Variant that ignores deleted edges (used by feasibility checks and the
// exact solver). deleted_mask may be empty (nothing deleted).
std::optional<PathWitness> min_weight_k_path_masked(const DagInstance& inst,
                                                    std::span<const double> x,
                                                    std::span<const char> deleted_mask);

// True iff the graph with `deleted` edges removed has no k-edge path.
bool is_feasible(const DagInstance& inst, std::span<const int> deleted);
bool is_feasible_masked(const DagInstance& inst, std::span<const char> deleted_mask);

}  // namespace dagcut
