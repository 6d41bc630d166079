#include "dagcut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dagcut/errors.hpp"

namespace dagcut {

DagInstance::DagInstance(int n, std::vector<Edge> edges, int k)
    : n_(n), k_(k), edges_(std::move(edges)) {
  if (n_ <= 0) raise(ErrorCode::BadParams, "vertex count must be positive");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.tail < 0 || e.tail >= n_ || e.head < 0 || e.head >= n_) {
      raise(ErrorCode::BadEndpoint,
            "edge " + std::to_string(i) + " endpoint outside [0, " + std::to_string(n_) + ")");
    }
    if (e.tail == e.head) {
      raise(ErrorCode::CycleDetected, "self-loop at vertex " + std::to_string(e.tail));
    }
    if (!std::isfinite(e.cost) || e.cost < 0.0) {
      raise(ErrorCode::NegativeCost, "edge " + std::to_string(i) + " cost must be finite and >= 0");
    }
  }
  if (k_ < 1 || k_ > n_ - 1) {
    raise(ErrorCode::KOutOfRange,
          "k=" + std::to_string(k_) + " outside [1, " + std::to_string(n_ - 1) + "]");
  }

  // Kahn's algorithm; a leftover vertex means a directed cycle.
  std::vector<int> indeg(static_cast<std::size_t>(n_), 0);
  for (const Edge& e : edges_) indeg[static_cast<std::size_t>(e.head)]++;
  std::vector<int> stack;
  for (int v = 0; v < n_; ++v) {
    if (indeg[static_cast<std::size_t>(v)] == 0) stack.push_back(v);
  }
  std::vector<std::vector<int>> out_edges(static_cast<std::size_t>(n_));
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    out_edges[static_cast<std::size_t>(edges_[i].tail)].push_back(static_cast<int>(i));
  }
  topo_.reserve(static_cast<std::size_t>(n_));
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    topo_.push_back(v);
    for (int id : out_edges[static_cast<std::size_t>(v)]) {
      int h = edges_[static_cast<std::size_t>(id)].head;
      if (--indeg[static_cast<std::size_t>(h)] == 0) stack.push_back(h);
    }
  }
  if (static_cast<int>(topo_.size()) != n_) {
    raise(ErrorCode::CycleDetected, "input graph is not a DAG");
  }
}

double DagInstance::total_cost(std::span<const int> edge_ids) const {
  double sum = 0.0;
  for (int id : edge_ids) sum += edges_[static_cast<std::size_t>(id)].cost;
  return sum;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::optional<PathWitness> min_weight_k_path_masked(const DagInstance& inst,
                                                    std::span<const double> x,
                                                    std::span<const char> deleted_mask) {
  const int n = inst.vertex_count();
  const int k = inst.k();
  const auto& edges = inst.edges();
  const std::size_t m = edges.size();
  if (!x.empty() && x.size() != m) {
    raise(ErrorCode::InvalidArgument, "x must be indexed by edge id");
  }

  // dp[v]: best weight of an exactly-j-edge path ending at v for the current
  // layer j; pred[j][v]: edge id achieving it. Scanning edges in id order and
  // replacing only on strict improvement keeps the smallest-edge-id
  // predecessor on ties.
  std::vector<double> prev(static_cast<std::size_t>(n), 0.0);
  std::vector<double> cur(static_cast<std::size_t>(n), kInf);
  std::vector<std::vector<int>> pred(static_cast<std::size_t>(k),
                                     std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int j = 0; j < k; ++j) {
    std::fill(cur.begin(), cur.end(), kInf);
    for (std::size_t id = 0; id < m; ++id) {
      if (!deleted_mask.empty() && deleted_mask[id]) continue;
      const Edge& e = edges[id];
      const double base = prev[static_cast<std::size_t>(e.tail)];
      if (base == kInf) continue;
      const double w = base + (x.empty() ? 0.0 : x[id]);
      if (w < cur[static_cast<std::size_t>(e.head)]) {
        cur[static_cast<std::size_t>(e.head)] = w;
        pred[static_cast<std::size_t>(j)][static_cast<std::size_t>(e.head)] =
            static_cast<int>(id);
      }
    }
    std::swap(prev, cur);
  }

  int best_v = -1;
  double best_w = kInf;
  for (int v = 0; v < n; ++v) {
    if (prev[static_cast<std::size_t>(v)] < best_w) {
      best_w = prev[static_cast<std::size_t>(v)];
      best_v = v;
    }
  }
  if (best_v < 0) return std::nullopt;

  PathWitness wit;
  wit.weight = best_w;
  wit.vertices.assign(static_cast<std::size_t>(k) + 1, -1);
  wit.edge_ids.assign(static_cast<std::size_t>(k), -1);
  int v = best_v;
  for (int j = k - 1; j >= 0; --j) {
    int id = pred[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)];
    wit.edge_ids[static_cast<std::size_t>(j)] = id;
    wit.vertices[static_cast<std::size_t>(j) + 1] = v;
    v = inst.edge(id).tail;
  }
  wit.vertices[0] = v;
  return wit;
}

std::optional<PathWitness> min_weight_k_path(const DagInstance& inst,
                                             std::span<const double> x) {
  return min_weight_k_path_masked(inst, x, {});
}

bool is_feasible_masked(const DagInstance& inst, std::span<const char> deleted_mask) {
  return !min_weight_k_path_masked(inst, {}, deleted_mask).has_value();
}

bool is_feasible(const DagInstance& inst, std::span<const int> deleted) {
  std::vector<char> mask(static_cast<std::size_t>(inst.edge_count()), 0);
  for (int id : deleted) {
    if (id < 0 || id >= inst.edge_count()) {
      raise(ErrorCode::InvalidArgument, "deleted edge id out of range");
    }
    mask[static_cast<std::size_t>(id)] = 1;
  }
  return is_feasible_masked(inst, mask);
}

}  // namespace dagcut
