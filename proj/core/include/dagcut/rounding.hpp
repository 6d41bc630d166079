#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "dagcut/densities.hpp"
#include "dagcut/graph.hpp"
#include "dagcut/lp.hpp"

namespace dagcut {

struct LabelAssignment {
  std::vector<double> value;  // one label in [0,1] per vertex
};

struct CutSolution {
  std::vector<int> deleted;
  double cost = 0.0;
  std::optional<LabelAssignment> labels;
  bool feasible = false;
};

enum class DistKind { Independent, BipartiteCorrelated, DiscreteUniform };

// Tagged family of label distributions used by the cut rule. Immutable and
// cheap to copy; the independent variant caches its exact difference CDF.
class LabelDistribution {
 public:
  static LabelDistribution independent(LabelDensity density, std::uint64_t seed = 0);
  // Verifies the instance's underlying undirected graph is 2-colorable and
  // records the parts.
  static LabelDistribution bipartite_correlated(const DagInstance& inst,
                                                std::uint64_t seed = 0);
  static LabelDistribution discrete_uniform(int r, std::uint64_t seed = 0);

  DistKind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  const LabelDensity& density() const;
  const PiecewisePoly& difference() const;  // independent variant only
  const std::vector<char>& side() const;    // bipartite variant only
  int r() const;                            // discrete variant only

 private:
  LabelDistribution() = default;

  DistKind kind_ = DistKind::Independent;
  std::uint64_t seed_ = 0;
  std::shared_ptr<const LabelDensity> density_;
  std::shared_ptr<const PiecewisePoly> difference_;
  std::shared_ptr<const std::vector<char>> side_;
  int r_ = 0;
};

LabelAssignment sample_labels(const LabelDistribution& dist, const DagInstance& inst,
                              std::mt19937_64& rng);

// Deletes exactly the edges with l(head) - l(tail) <= (k+1)x_e - 1 (ties are
// deleted; the feasibility argument needs the rule closed). Feasibility of
// the result is re-checked; a violation means x failed LP covering and is
// reported as InfeasibleInput.
CutSolution cut_rule(const DagInstance& inst, const std::vector<double>& x,
                     const LabelAssignment& labels);

struct MonteCarloResult {
  CutSolution best;
  double mean_cost = 0.0;
  double std_error = 0.0;       // standard error of the mean
  double empirical_ratio = 0.0; // mean / ((k+1) c(x)); NaN when c(x)=0
};

// Repeats sample+cut with per-trial RNG streams split deterministically from
// the seed, so results are reproducible and trials can run in parallel.
MonteCarloResult monte_carlo_round(const DagInstance& inst, const std::vector<double>& x,
                                   const LabelDistribution& dist, int trials,
                                   std::uint64_t seed);

// Exact probability that one edge with value x_e is cut under the
// distribution: independent -> difference CDF at (k+1)x_e - 1; bipartite ->
// 0.5 (k+1) x_e clamped; discrete -> exact pair enumeration.
double per_edge_cut_probability(const LabelDistribution& dist, double x_e, int k);

// Exact-rational version of the discrete case, for the closed-form checks.
Rational discrete_cut_probability_exact(int r, const Rational& x_e, int k);

// Smallest integer r whose structured window [(1+1/(r+1))/(k+1),
// (1+1/r)/(k+1)) contains every positive x_e; for r=1 values >= 2/(k+1) are
// admitted too (those edges are cut with probability 1 anyway).
std::optional<int> structured_rank(const std::vector<double>& x, int k);

struct StructuredResult {
  CutSolution cut;
  int r = 0;
};

// Rounds a structured solution with the uniform atomic distribution on
// {0, 1/r, ..., 1}. Throws NotStructured when no admissible r exists.
StructuredResult structured_round(const DagInstance& inst, const std::vector<double>& x,
                                  std::uint64_t seed);

// Method of conditional expectations over a quantile grid of candidate
// labels, fixing vertices in topological order. Deterministic; supports the
// independent variant.
CutSolution derandomize(const DagInstance& inst, const std::vector<double>& x,
                        const LabelDensity& density, int grid_size);

}  // namespace dagcut
