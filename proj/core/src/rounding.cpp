#include "dagcut/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "dagcut/errors.hpp"

namespace dagcut {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(trial + 1)));
}

}  // namespace

LabelDistribution LabelDistribution::independent(LabelDensity density, std::uint64_t seed) {
  LabelDistribution d;
  d.kind_ = DistKind::Independent;
  d.seed_ = seed;
  d.difference_ = std::make_shared<PiecewisePoly>(difference_cdf(density));
  d.density_ = std::make_shared<LabelDensity>(std::move(density));
  return d;
}

LabelDistribution LabelDistribution::bipartite_correlated(const DagInstance& inst,
                                                          std::uint64_t seed) {
  const int n = inst.vertex_count();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : inst.edges()) {
    adj[static_cast<std::size_t>(e.tail)].push_back(e.head);
    adj[static_cast<std::size_t>(e.head)].push_back(e.tail);
  }
  std::vector<char> color(static_cast<std::size_t>(n), -1);
  std::vector<int> queue;
  for (int s = 0; s < n; ++s) {
    if (color[static_cast<std::size_t>(s)] != -1) continue;
    color[static_cast<std::size_t>(s)] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (color[static_cast<std::size_t>(w)] == -1) {
          color[static_cast<std::size_t>(w)] =
              static_cast<char>(1 - color[static_cast<std::size_t>(v)]);
          queue.push_back(w);
        } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(v)]) {
          raise(ErrorCode::NotBipartite, "underlying undirected graph has an odd cycle");
        }
      }
    }
  }
  LabelDistribution d;
  d.kind_ = DistKind::BipartiteCorrelated;
  d.seed_ = seed;
  d.side_ = std::make_shared<std::vector<char>>(std::move(color));
  return d;
}

LabelDistribution LabelDistribution::discrete_uniform(int r, std::uint64_t seed) {
  if (r < 1) raise(ErrorCode::InvalidArgument, "discrete label distribution needs r >= 1");
  LabelDistribution d;
  d.kind_ = DistKind::DiscreteUniform;
  d.seed_ = seed;
  d.r_ = r;
  return d;
}

const LabelDensity& LabelDistribution::density() const {
  if (!density_) raise(ErrorCode::InvalidArgument, "not an independent label distribution");
  return *density_;
}

const PiecewisePoly& LabelDistribution::difference() const {
  if (!difference_) raise(ErrorCode::InvalidArgument, "not an independent label distribution");
  return *difference_;
}

const std::vector<char>& LabelDistribution::side() const {
  if (!side_) raise(ErrorCode::InvalidArgument, "not a bipartite label distribution");
  return *side_;
}

int LabelDistribution::r() const {
  if (kind_ != DistKind::DiscreteUniform) {
    raise(ErrorCode::InvalidArgument, "not a discrete label distribution");
  }
  return r_;
}

LabelAssignment sample_labels(const LabelDistribution& dist, const DagInstance& inst,
                              std::mt19937_64& rng) {
  const int n = inst.vertex_count();
  LabelAssignment out;
  out.value.resize(static_cast<std::size_t>(n));
  switch (dist.kind()) {
    case DistKind::Independent: {
      const LabelDensity& d = dist.density();
      for (double& v : out.value) v = d.inverse_cdf(uniform01(rng));
      break;
    }
    case DistKind::BipartiteCorrelated: {
      if (static_cast<int>(dist.side().size()) != n) {
        raise(ErrorCode::InvalidArgument, "bipartite distribution built for another instance");
      }
      const double y = uniform01(rng);
      const bool heads = (rng() & 1ull) != 0;
      for (int v = 0; v < n; ++v) {
        const bool in_a = dist.side()[static_cast<std::size_t>(v)] == 0;
        out.value[static_cast<std::size_t>(v)] = (in_a == heads) ? 0.0 : y;
      }
      break;
    }
    case DistKind::DiscreteUniform: {
      DiscreteLabels labels(dist.r());
      for (double& v : out.value) v = labels.sample(rng);
      break;
    }
  }
  return out;
}

CutSolution cut_rule(const DagInstance& inst, const std::vector<double>& x,
                     const LabelAssignment& labels) {
  if (static_cast<int>(x.size()) != inst.edge_count() ||
      static_cast<int>(labels.value.size()) != inst.vertex_count()) {
    raise(ErrorCode::InvalidArgument, "cut rule size mismatch");
  }
  const double kp1 = inst.k() + 1;
  CutSolution out;
  for (int id = 0; id < inst.edge_count(); ++id) {
    const Edge& e = inst.edge(id);
    const double threshold = kp1 * x[static_cast<std::size_t>(id)] - 1.0;
    const double diff = labels.value[static_cast<std::size_t>(e.head)] -
                        labels.value[static_cast<std::size_t>(e.tail)];
    if (diff <= threshold) {
      out.deleted.push_back(id);
      out.cost += e.cost;
    }
  }
  if (!is_feasible(inst, out.deleted)) {
    raise(ErrorCode::InfeasibleInput,
          "cut rule left a k-path alive; upstream x violates LP covering");
  }
  out.feasible = true;
  out.labels = labels;
  return out;
}

MonteCarloResult monte_carlo_round(const DagInstance& inst, const std::vector<double>& x,
                                   const LabelDistribution& dist, int trials,
                                   std::uint64_t seed) {
  if (trials < 1) raise(ErrorCode::InvalidArgument, "need at least one trial");

  std::vector<double> costs(static_cast<std::size_t>(trials));
  std::vector<int> best_trial_per_chunk;
  std::vector<CutSolution> best_per_chunk;

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int chunk_count = trials >= 256 ? static_cast<int>(std::min<unsigned>(hw, 8)) : 1;
  best_trial_per_chunk.assign(static_cast<std::size_t>(chunk_count), -1);
  best_per_chunk.assign(static_cast<std::size_t>(chunk_count), {});

  auto run_chunk = [&](int chunk) {
    double best_cost = std::numeric_limits<double>::infinity();
    for (int t = chunk; t < trials; t += chunk_count) {
      std::mt19937_64 rng = trial_rng(seed, static_cast<std::uint64_t>(t));
      LabelAssignment labels = sample_labels(dist, inst, rng);
      CutSolution cut = cut_rule(inst, x, labels);
      costs[static_cast<std::size_t>(t)] = cut.cost;
      // Strict improvement only: the winner is the earliest trial attaining
      // the minimum, independent of how trials are spread across threads.
      if (cut.cost < best_cost) {
        best_cost = cut.cost;
        best_per_chunk[static_cast<std::size_t>(chunk)] = std::move(cut);
        best_trial_per_chunk[static_cast<std::size_t>(chunk)] = t;
      }
    }
  };

  if (chunk_count == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(chunk_count));
    for (int c = 0; c < chunk_count; ++c) pool.emplace_back(run_chunk, c);
    for (auto& th : pool) th.join();
  }

  MonteCarloResult out;
  int best_trial = -1;
  for (int c = 0; c < chunk_count; ++c) {
    const int t = best_trial_per_chunk[static_cast<std::size_t>(c)];
    if (t < 0) continue;
    const double cost = costs[static_cast<std::size_t>(t)];
    if (best_trial < 0 || cost < out.best.cost ||
        (cost == out.best.cost && t < best_trial)) {
      out.best = best_per_chunk[static_cast<std::size_t>(c)];
      best_trial = t;
    }
  }

  double mean = 0.0;
  for (double c : costs) mean += c;
  mean /= trials;
  double var = 0.0;
  for (double c : costs) var += (c - mean) * (c - mean);
  out.mean_cost = mean;
  out.std_error = trials > 1 ? std::sqrt(var / (static_cast<double>(trials) * (trials - 1))) : 0.0;

  const double lp_cost = solution_cost(inst, x);
  const double denom = (inst.k() + 1) * lp_cost;
  out.empirical_ratio = denom > 0.0 ? mean / denom : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double per_edge_cut_probability(const LabelDistribution& dist, double x_e, int k) {
  const double threshold = (k + 1) * x_e - 1.0;
  switch (dist.kind()) {
    case DistKind::Independent:
      return dist.difference().eval(std::clamp(threshold, -1.0, 1.0));
    case DistKind::BipartiteCorrelated:
      return std::clamp((k + 1) * x_e / 2.0, 0.0, 1.0);
    case DistKind::DiscreteUniform:
      return to_double(discrete_cut_probability_exact(dist.r(), Rational(x_e), k));
  }
  return 0.0;
}

Rational discrete_cut_probability_exact(int r, const Rational& x_e, int k) {
  DiscreteLabels labels(r);
  return labels.cut_probability(Rational(k + 1) * x_e - 1);
}

std::optional<int> structured_rank(const std::vector<double>& x, int k) {
  // Work in threshold space s = (k+1) x_e - 1; the window for rank r is
  // [1/(r+1), 1/r), with r=1 additionally accepting s >= 1 (those edges are
  // cut with probability 1 under any distribution). A small guard band
  // absorbs LP roundoff without ever letting s reach the open right end.
  constexpr double kGuard = 1e-9;
  double smin = std::numeric_limits<double>::infinity();
  bool any_positive = false;
  for (double v : x) {
    if (v > 1e-12) {
      any_positive = true;
      smin = std::min(smin, (k + 1) * v - 1.0);
    }
  }
  if (!any_positive) return 1;  // nothing to round; any r works
  if (smin < kGuard) return std::nullopt;

  const int r_max = static_cast<int>(std::ceil(1.0 / smin)) + 1;
  for (int r = 1; r <= r_max; ++r) {
    bool ok = true;
    for (double v : x) {
      if (v <= 1e-12) continue;
      const double s = (k + 1) * v - 1.0;
      const bool in_window = s >= 1.0 / (r + 1) - kGuard && s < 1.0 / r - kGuard;
      const bool precut = r == 1 && s >= 1.0 - kGuard;
      if (!in_window && !precut) {
        ok = false;
        break;
      }
    }
    if (ok) return r;
  }
  return std::nullopt;
}

StructuredResult structured_round(const DagInstance& inst, const std::vector<double>& x,
                                  std::uint64_t seed) {
  auto r = structured_rank(x, inst.k());
  if (!r) raise(ErrorCode::NotStructured, "no single window holds every positive x_e");
  LabelDistribution dist = LabelDistribution::discrete_uniform(*r, seed);
  std::mt19937_64 rng = trial_rng(seed, 0);
  LabelAssignment labels = sample_labels(dist, inst, rng);
  StructuredResult out;
  out.r = *r;
  out.cut = cut_rule(inst, x, labels);
  return out;
}

CutSolution derandomize(const DagInstance& inst, const std::vector<double>& x,
                        const LabelDensity& density, int grid_size) {
  if (grid_size < 2) raise(ErrorCode::InvalidArgument, "grid needs at least two labels");
  const int n = inst.vertex_count();
  const int m = inst.edge_count();
  const PiecewisePoly diff = difference_cdf(density);

  std::vector<double> grid(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    grid[static_cast<std::size_t>(i)] =
        density.inverse_cdf(static_cast<double>(i) / (grid_size - 1));
  }

  std::vector<double> threshold(static_cast<std::size_t>(m));
  for (int e = 0; e < m; ++e) {
    threshold[static_cast<std::size_t>(e)] = (inst.k() + 1) * x[static_cast<std::size_t>(e)] - 1.0;
  }

  std::vector<char> fixed(static_cast<std::size_t>(n), 0);
  std::vector<double> label(static_cast<std::size_t>(n), 0.0);

  // Conditional cut probability of edge e given the currently fixed labels,
  // optionally overriding vertex v with candidate value lv.
  auto edge_term = [&](int e, int v, double lv) {
    const Edge& ed = inst.edge(e);
    const double th = threshold[static_cast<std::size_t>(e)];
    const bool tail_fixed = fixed[static_cast<std::size_t>(ed.tail)] || ed.tail == v;
    const bool head_fixed = fixed[static_cast<std::size_t>(ed.head)] || ed.head == v;
    const double lt = ed.tail == v ? lv : label[static_cast<std::size_t>(ed.tail)];
    const double lh = ed.head == v ? lv : label[static_cast<std::size_t>(ed.head)];
    double p;
    if (tail_fixed && head_fixed) {
      p = (lh - lt <= th) ? 1.0 : 0.0;
    } else if (tail_fixed) {
      p = density.cdf_at(std::clamp(lt + th, 0.0, 1.0));       // P[L_head <= lt + th]
    } else if (head_fixed) {
      p = 1.0 - density.cdf_at(std::clamp(lh - th, 0.0, 1.0)); // P[L_tail >= lh - th]
    } else {
      p = diff.eval(std::clamp(th, -1.0, 1.0));
    }
    return ed.cost * p;
  };

  std::vector<std::vector<int>> incident(static_cast<std::size_t>(n));
  for (int e = 0; e < m; ++e) {
    incident[static_cast<std::size_t>(inst.edge(e).tail)].push_back(e);
    incident[static_cast<std::size_t>(inst.edge(e).head)].push_back(e);
  }

  for (int v : inst.topological_order()) {
    const auto& inc = incident[static_cast<std::size_t>(v)];
    double best_delta = std::numeric_limits<double>::infinity();
    double best_label = grid.front();
    for (double lv : grid) {
      double delta = 0.0;
      for (int e : inc) delta += edge_term(e, v, lv);
      if (delta < best_delta - 1e-15) {
        best_delta = delta;
        best_label = lv;
      }
    }
    label[static_cast<std::size_t>(v)] = best_label;
    fixed[static_cast<std::size_t>(v)] = 1;
  }

  LabelAssignment labels;
  labels.value = std::move(label);
  return cut_rule(inst, x, labels);
}

}  // namespace dagcut
