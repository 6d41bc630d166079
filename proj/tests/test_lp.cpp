#include <cmath>
#include <random>

#include "doctest.h"

#include "dagcut/exact.hpp"
#include "dagcut/graph.hpp"
#include "dagcut/io.hpp"
#include "dagcut/lp.hpp"

using namespace dagcut;

TEST_CASE("single path concentrates on the cheapest edge") {
  DagInstance inst = build_instance(4, {{0, 1, 3.0}, {1, 2, 1.0}, {2, 3, 2.0}}, 3);
  FractionalSolution sol = solve_lp(inst);
  CHECK(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sol.x[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sol.x[0] == doctest::Approx(0.0));
  CHECK(sol.x[2] == doctest::Approx(0.0));
}

TEST_CASE("no k-path gives the zero solution") {
  DagInstance inst = build_instance(4, {{0, 1, 5.0}, {2, 3, 5.0}}, 2);
  FractionalSolution sol = solve_lp(inst);
  CHECK(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(0.0));
  CHECK(sol.active_constraints.empty());
}

TEST_CASE("cutting planes match full enumeration on random layered DAGs") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    DagInstance inst = generate_layered(4, 3, 0.8, seed, 3);  // n = 9 + sink layer handling
    FractionalSolution a = solve_lp(inst);
    FractionalSolution b = full_lp(inst);
    CHECK(std::abs(a.objective - b.objective) <= 1e-6 * (1.0 + std::abs(b.objective)));
  }
}

TEST_CASE("restricted objective is nondecreasing across rounds") {
  for (std::uint64_t seed = 50; seed < 60; ++seed) {
    DagInstance inst = generate_layered(5, 3, 0.75, seed, 3);
    FractionalSolution sol = solve_lp(inst);
    for (std::size_t i = 1; i < sol.objective_trace.size(); ++i) {
      CHECK(sol.objective_trace[i] >= sol.objective_trace[i - 1] - 1e-9);
    }
  }
}

TEST_CASE("optimal solutions certify all path constraints") {
  for (std::uint64_t seed = 70; seed < 85; ++seed) {
    DagInstance inst = generate_layered(4, 4, 0.7, seed, 2);
    FractionalSolution sol = solve_lp(inst);
    REQUIRE(sol.status == LpStatus::Optimal);
    auto wit = min_weight_k_path(inst, sol.x);
    if (wit.has_value()) CHECK(wit->weight >= 1.0 - 1e-7);
    for (const auto& p : sol.active_constraints) {
      double s = 0.0;
      for (int e : p.edge_ids) s += sol.x[static_cast<std::size_t>(e)];
      CHECK(s >= 1.0 - 1e-7);
    }
    for (double v : sol.x) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("weak duality sandwich against the enumeration reference") {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    DagInstance inst = generate_layered(4, 3, 0.85, seed, 3);
    FractionalSolution reference = full_lp(inst);
    FractionalSolution sol = solve_lp(inst);
    // Every restricted optimum along the way is a lower bound on the full
    // optimum, and the feasible all-ones point is an upper bound.
    for (double obj : sol.objective_trace) {
      CHECK(obj <= reference.objective + 1e-7);
    }
    std::vector<double> ones(static_cast<std::size_t>(inst.edge_count()), 1.0);
    CHECK(reference.objective <= solution_cost(inst, ones) + 1e-9);
  }
}
