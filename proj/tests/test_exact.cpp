#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "dagcut/errors.hpp"
#include "dagcut/exact.hpp"
#include "dagcut/io.hpp"

using namespace dagcut;

namespace {

// Independent oracle: try all 2^m deletion sets.
double subset_enumeration_optimum(const DagInstance& inst) {
  const int m = inst.edge_count();
  double best = 1e300;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> del;
    double cost = 0.0;
    for (int e = 0; e < m; ++e) {
      if (mask & (1u << e)) {
        del.push_back(e);
        cost += inst.edge(e).cost;
      }
    }
    if (cost < best && is_feasible(inst, del)) best = cost;
  }
  return best;
}

}  // namespace

TEST_CASE("single path needs one deletion") {
  DagInstance path = generate_path(4);
  ExactResult r = exact_solve(path);
  CHECK(r.certified);
  CHECK(r.cost == doctest::Approx(1.0));
  CHECK(r.deleted.size() == 1);
  CHECK(is_feasible(path, r.deleted));
}

TEST_CASE("no k-path means nothing to delete") {
  DagInstance inst = build_instance(4, {{0, 1, 2.0}, {2, 3, 2.0}}, 2);
  ExactResult r = exact_solve(inst);
  CHECK(r.certified);
  CHECK(r.cost == 0.0);
  CHECK(r.deleted.empty());
}

TEST_CASE("branch and bound matches subset enumeration") {
  std::mt19937_64 rng(31);
  int done = 0;
  while (done < 25) {
    const int layers = 3 + static_cast<int>(rng() % 2);
    DagInstance inst = generate_layered(layers, 2 + static_cast<int>(rng() % 2),
                                        0.8, rng(), std::min(3, layers - 1));
    if (inst.edge_count() > 16 || inst.edge_count() == 0) continue;
    ++done;
    ExactResult r = exact_solve(inst);
    REQUIRE(r.certified);
    CHECK(r.cost == doctest::Approx(subset_enumeration_optimum(inst)).epsilon(1e-9));
    CHECK(is_feasible(inst, r.deleted));
  }
}

TEST_CASE("budget exhaustion returns an uncertified incumbent") {
  DagInstance inst = generate_layered(5, 4, 0.9, 3, 4);
  ExactResult r = exact_solve(inst, 3);
  CHECK_FALSE(r.certified);
  CHECK(is_feasible(inst, r.deleted));
  ExactResult full = exact_solve(inst, 10'000'000);
  CHECK(full.certified);
  CHECK(full.cost <= r.cost + 1e-9);
}

TEST_CASE("path enumeration counts") {
  CHECK(enumerate_k_paths(generate_path(4)).size() == 1);

  DagInstance dia = build_instance(4, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}}, 2);
  CHECK(enumerate_k_paths(dia).size() == 2);
  CHECK(count_k_paths(dia) == 2);

  // Complete 3x3x3 layered DAG with k=2: 3 choices per layer crossing.
  DagInstance lay = generate_layered(3, 3, 1.0, 0, 2);
  CHECK(count_k_paths(lay) == 27);
  CHECK(enumerate_k_paths(lay).size() == 27);

  CHECK_THROWS_WITH_AS(enumerate_k_paths(lay, 5), doctest::Contains("TooManyPaths"), Error);
}

TEST_CASE("enumeration agrees with the DP count on random instances") {
  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 30; ++iter) {
    DagInstance inst = generate_layered(3 + static_cast<int>(rng() % 3),
                                        2 + static_cast<int>(rng() % 3), 0.7, rng(), 2);
    CHECK(enumerate_k_paths(inst).size() == count_k_paths(inst));
  }
}

TEST_CASE("full LP examples") {
  DagInstance path = build_instance(4, {{0, 1, 3.0}, {1, 2, 1.0}, {2, 3, 2.0}}, 3);
  CHECK(full_lp(path).objective == doctest::Approx(1.0));

  DagInstance empty = build_instance(4, {{0, 1, 5.0}, {2, 3, 5.0}}, 2);
  CHECK(full_lp(empty).objective == 0.0);
}

TEST_CASE("sandwich: LP <= exact <= any rounding, and the gap audit") {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 20; ++iter) {
    DagInstance inst = generate_layered(3 + static_cast<int>(rng() % 3),
                                        2 + static_cast<int>(rng() % 3), 0.8, rng(), 2);
    FractionalSolution lp = full_lp(inst);
    ExactResult opt = exact_solve(inst);
    REQUIRE(opt.certified);
    CHECK(lp.objective <= opt.cost + 1e-9);
    CHECK(opt.cost <= 0.549 * (inst.k() + 1) * lp.objective + 1e-6);

    FractionalSolution cutting = solve_lp(inst);
    CHECK(std::abs(cutting.objective - lp.objective) <= 1e-6 * (1.0 + lp.objective));
  }
}
