#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "dagcut/densities.hpp"
#include "dagcut/errors.hpp"
#include "dagcut/io.hpp"
#include "dagcut/lp.hpp"
#include "dagcut/rounding.hpp"

using namespace dagcut;

TEST_CASE("discrete sampler labels live on the atom grid") {
  DagInstance path = generate_path(3);
  LabelDistribution dist = LabelDistribution::discrete_uniform(1);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    LabelAssignment l = sample_labels(dist, path, rng);
    for (double v : l.value) CHECK((v == 0.0 || v == 1.0));
  }
}

TEST_CASE("bipartite sampler produces Uniform(-1,1) differences") {
  DagInstance path = generate_path(3);
  LabelDistribution dist = LabelDistribution::bipartite_correlated(path);
  std::mt19937_64 rng(12345);
  const int n = 1'000'000;
  std::vector<double> diffs;
  diffs.reserve(n);
  const Edge& e = path.edge(1);
  for (int i = 0; i < n; ++i) {
    LabelAssignment l = sample_labels(dist, path, rng);
    diffs.push_back(l.value[static_cast<std::size_t>(e.head)] -
                    l.value[static_cast<std::size_t>(e.tail)]);
  }
  std::sort(diffs.begin(), diffs.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = (diffs[static_cast<std::size_t>(i)] + 1.0) / 2.0;
    ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / n));
    ks = std::max(ks, std::abs(cdf - static_cast<double>(i + 1) / n));
  }
  CHECK(ks < 0.002);
}

TEST_CASE("bipartite construction rejects odd cycles") {
  // Triangle 0->1->2 plus 0->2 has an odd undirected cycle.
  DagInstance tri = build_instance(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}, 2);
  CHECK_THROWS_WITH_AS(LabelDistribution::bipartite_correlated(tri),
                       doctest::Contains("NotBipartite"), Error);
}

TEST_CASE("uniform independent labels have mean one half") {
  DagInstance path = generate_path(7);
  LabelDistribution dist = LabelDistribution::independent(uniform_density());
  std::mt19937_64 rng(5);
  double mean = 0.0;
  long count = 0;
  for (int i = 0; i < 15'000; ++i) {
    LabelAssignment l = sample_labels(dist, path, rng);
    for (double v : l.value) {
      mean += v;
      ++count;
    }
  }
  CHECK(std::abs(mean / static_cast<double>(count) - 0.5) <= 0.01);
}

TEST_CASE("cut rule keeps zero-value edges with increasing labels") {
  DagInstance path = generate_path(2);
  LabelAssignment l{{0.1, 0.5, 0.9}};
  CutSolution cut = cut_rule(path, std::vector<double>{0.0, 1.0}, l);
  CHECK(cut.feasible);
  // threshold for x=0 is -1 < 0.4, so edge 0 survives; edge 1 is forced.
  CHECK(cut.deleted == std::vector<int>{1});
}

TEST_CASE("cut rule deletes ties and respects the spec walk-through") {
  DagInstance path = generate_path(2);  // 0->1->2, k=2
  const double third = 1.0 / 3.0;
  LabelAssignment l{{0.9, 0.5, 0.7}};
  CutSolution cut = cut_rule(path, std::vector<double>{third, third}, l);
  // thresholds are 0: edge (0,1) has diff -0.4 <= 0 -> cut; (1,2) has 0.2 -> kept
  CHECK(cut.deleted == std::vector<int>{0});
  CHECK(cut.cost == doctest::Approx(1.0));
  CHECK(cut.feasible);
}

TEST_CASE("edges at x = 2/(k+1) are always cut") {
  DagInstance path = generate_path(3);
  const int k = path.k();
  std::vector<double> x(3, 2.0 / (k + 1));
  std::mt19937_64 rng(2);
  LabelDistribution dist = LabelDistribution::independent(uniform_density());
  for (int i = 0; i < 200; ++i) {
    LabelAssignment l = sample_labels(dist, path, rng);
    CutSolution cut = cut_rule(path, x, l);
    CHECK(cut.deleted.size() == 3);
  }
}

TEST_CASE("per-edge probabilities: bipartite closed form is exact") {
  DagInstance path = generate_path(3);
  LabelDistribution dist = LabelDistribution::bipartite_correlated(path);
  for (int k : {1, 2, 5, 50}) {
    for (int i = 0; i <= 50; ++i) {
      const double x = 2.0 / (k + 1) * i / 50.0;
      CHECK(per_edge_cut_probability(dist, x, k) == 0.5 * (k + 1) * x);
    }
    CHECK(per_edge_cut_probability(dist, 1.0, k) == 1.0);
  }
}

TEST_CASE("per-edge probabilities: independent uniform at the symmetric point") {
  LabelDistribution dist = LabelDistribution::independent(uniform_density());
  for (int k : {1, 3, 9}) {
    CHECK(per_edge_cut_probability(dist, 1.0 / (k + 1), k) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("per-edge probabilities: discrete enumeration matches the window form") {
  for (int r = 1; r <= 50; ++r) {
    const int k = 4;
    const Rational lo = (Rational(1) + Rational(1, r + 1)) / Rational(k + 1);
    const Rational hi = (Rational(1) + Rational(1, r)) / Rational(k + 1);
    const Rational mid = (lo + hi) / 2;
    CHECK(discrete_cut_probability_exact(r, mid, k) ==
          Rational(r + 2) / (2 * Rational(r + 1)));
  }
}

TEST_CASE("per-edge bound from the sup-ratio holds on a grid") {
  struct Case {
    LabelDistribution dist;
    double alpha;
  };
  const Case cases[] = {
      {LabelDistribution::independent(uniform_density()), 2.0 - std::sqrt(2.0)},
      {LabelDistribution::independent(poly_density()), 0.5482},
  };
  for (const Case& c : cases) {
    for (int k : {2, 5, 10, 50}) {
      for (int i = 0; i < 100; ++i) {
        const double x = 2.0 / (k + 1) * i / 99.0;
        CHECK(per_edge_cut_probability(c.dist, x, k) <= c.alpha * (k + 1) * x + 1e-9);
      }
    }
  }
}

TEST_CASE("Monte Carlo ratios respect the distribution guarantees") {
  DagInstance inst = generate_layered(4, 3, 0.9, 17, 3);
  FractionalSolution lp = solve_lp(inst);
  REQUIRE(lp.objective > 0.0);

  auto check_ratio = [&](const LabelDistribution& dist, double alpha) {
    MonteCarloResult mc = monte_carlo_round(inst, lp.x, dist, 3000, 7);
    const double limit = alpha + 3.0 * mc.std_error / ((inst.k() + 1) * lp.objective);
    CHECK(mc.empirical_ratio <= limit);
    CHECK(mc.best.feasible);
    CHECK(mc.best.cost <= mc.mean_cost + 1e-12);
  };
  check_ratio(LabelDistribution::independent(uniform_density()), 0.586);
  check_ratio(LabelDistribution::independent(poly_density()), 0.549);
  check_ratio(LabelDistribution::bipartite_correlated(inst), 0.5);
}

TEST_CASE("empirical ratio is NaN when the LP objective vanishes") {
  DagInstance inst = build_instance(4, {{0, 1, 5.0}, {2, 3, 5.0}}, 2);
  FractionalSolution lp = solve_lp(inst);
  REQUIRE(lp.objective == 0.0);
  MonteCarloResult mc =
      monte_carlo_round(inst, lp.x, LabelDistribution::independent(uniform_density()), 8, 1);
  CHECK(std::isnan(mc.empirical_ratio));
  CHECK(mc.mean_cost == 0.0);
}

TEST_CASE("identical seeds give identical solutions") {
  DagInstance inst = generate_layered(4, 3, 0.8, 23, 3);
  FractionalSolution lp = solve_lp(inst);
  LabelDistribution dist = LabelDistribution::independent(poly_density());
  MonteCarloResult a = monte_carlo_round(inst, lp.x, dist, 500, 99);
  MonteCarloResult b = monte_carlo_round(inst, lp.x, dist, 500, 99);
  CHECK(a.best.deleted == b.best.deleted);
  CHECK(a.mean_cost == b.mean_cost);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("feasibility holds across distributions on random instances") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    DagInstance inst = generate_layered(3 + seed % 3, 2 + seed % 3, 0.7, seed, 2);
    FractionalSolution lp = solve_lp(inst);
    std::vector<LabelDistribution> dists{
        LabelDistribution::independent(uniform_density()),
        LabelDistribution::independent(poly_density()),
        LabelDistribution::bipartite_correlated(inst),
        LabelDistribution::discrete_uniform(1 + static_cast<int>(seed % 4)),
    };
    std::mt19937_64 rng(seed * 77);
    for (const auto& dist : dists) {
      for (int t = 0; t < 25; ++t) {
        LabelAssignment l = sample_labels(dist, inst, rng);
        CutSolution cut = cut_rule(inst, lp.x, l);
        CHECK(cut.feasible);
        CHECK(is_feasible(inst, cut.deleted));
      }
    }
  }
}

TEST_CASE("structured rank detection") {
  const int k = 3;
  auto xval = [&](double s) { return (1.0 + s) / (k + 1); };  // threshold s

  // all positive values inside the r=2 window
  CHECK(structured_rank({0.0, xval(0.4), xval(0.4)}, k) == 2);
  // 1.5/(k+1) is the left end of the r=1 window, not part of r=2
  CHECK(structured_rank({0.0, 1.5 / (k + 1)}, k) == 1);
  // 2/(k+1) and above only fits the r=1 pre-cut allowance
  CHECK(structured_rank({0.0, 2.0 / (k + 1)}, k) == 1);
  // mixed windows
  CHECK_FALSE(structured_rank({xval(0.2), xval(0.6)}, k).has_value());
  // tiny positive values fit no window
  CHECK_FALSE(structured_rank({0.01 / (k + 1)}, k).has_value());
}

TEST_CASE("structured rounding cuts within the window probability") {
  const int k = 3;
  DagInstance path = generate_path(k);
  const double x = 1.4 / (k + 1);  // inside the r=2 window
  std::vector<double> xs(3, x);
  // LP covering needs sum >= 1: 3 * 1.4/4 = 1.05 >= 1.
  StructuredResult res = structured_round(path, xs, 5);
  CHECK(res.r == 2);
  CHECK(res.cut.feasible);
  CHECK(per_edge_cut_probability(LabelDistribution::discrete_uniform(2), x, k) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  // r=1 pre-cut: every edge at 2/(k+1) is deleted deterministically.
  std::vector<double> heavy(3, 2.0 / (k + 1));
  StructuredResult pre = structured_round(path, heavy, 6);
  CHECK(pre.r == 1);
  CHECK(pre.cut.deleted.size() == 3);

  std::vector<double> mixed{1.2 / (k + 1), 1.6 / (k + 1), 1.0};
  CHECK_THROWS_WITH_AS(structured_round(path, mixed, 7), doctest::Contains("NotStructured"),
                       Error);
}

TEST_CASE("derandomization: zero-value single edge stays") {
  DagInstance inst = build_instance(2, {{0, 1, 4.0}}, 1);
  CutSolution cut = derandomize(inst, std::vector<double>{0.0}, uniform_density(), 2);
  CHECK(cut.cost == 0.0);
  CHECK(cut.deleted.empty());
  CHECK(cut.feasible);
}

TEST_CASE("derandomization cuts a covering path and beats the Monte Carlo mean") {
  const int k = 4;
  DagInstance path = generate_path(k);
  std::vector<double> x(static_cast<std::size_t>(k), 1.0 / k);  // sums to exactly 1
  CutSolution det = derandomize(path, x, uniform_density(), 32);
  CHECK(det.feasible);
  CHECK(det.deleted.size() >= 1);

  for (std::uint64_t seed = 31; seed <= 36; ++seed) {
    DagInstance inst = generate_layered(4, 3, 0.8, seed, 3);
    FractionalSolution lp = solve_lp(inst);
    LabelDistribution dist = LabelDistribution::independent(uniform_density());
    MonteCarloResult mc = monte_carlo_round(inst, lp.x, dist, 10'000, seed);
    CutSolution d = derandomize(inst, lp.x, uniform_density(), 64);
    CHECK(d.feasible);
    CHECK(d.cost <= mc.mean_cost + 2.0 * mc.std_error);
  }
}
