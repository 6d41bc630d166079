#include "dagcut/verify.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include "dagcut/certificates.hpp"
#include "dagcut/densities.hpp"
#include "dagcut/errors.hpp"
#include "dagcut/exact.hpp"
#include "dagcut/io.hpp"
#include "dagcut/lp.hpp"
#include "dagcut/rounding.hpp"

namespace dagcut {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) { return format_double(v); }

// Instances small enough that every k-path can be enumerated; shared by the
// LP-agreement, ratio, and derandomization checks.
std::vector<DagInstance> enumerable_instances(std::uint64_t base_seed, int want) {
  std::vector<DagInstance> out;
  std::uint64_t seed = base_seed;
  int shape = 0;
  while (static_cast<int>(out.size()) < want) {
    ++seed;
    ++shape;
    const int layers = 3 + static_cast<int>(shape % 4);        // 3..6
    const int width = 2 + static_cast<int>((shape / 4) % 3);   // 2..4
    const double density = 0.55 + 0.1 * static_cast<double>((shape / 12) % 5);
    int k = 2 + static_cast<int>((shape / 60) % 2);            // 2..3
    k = std::min(k, layers - 1);
    DagInstance inst = generate_layered(layers, width, density, seed, k);
    const std::uint64_t paths = count_k_paths(inst);
    if (paths < 1 || paths > 10'000) continue;
    out.push_back(std::move(inst));
  }
  return out;
}

// Wider mix (larger n allowed) for the pure feasibility property.
std::vector<DagInstance> feasibility_instances(std::uint64_t base_seed) {
  std::vector<DagInstance> out;
  out.push_back(generate_path(1));
  out.push_back(generate_path(3));
  out.push_back(generate_path(7));
  for (int i = 0; i < 12; ++i) {
    const int layers = 3 + i % 5;
    const int width = 2 + i % 6;
    const double density = 0.5 + 0.08 * (i % 6);
    const int k = std::min(layers - 1, 2 + i % 4);
    out.push_back(generate_layered(layers, width, density, base_seed + 100 + i, k));
  }
  for (int i = 0; i < 6; ++i) {
    out.push_back(generate_bipartite(3 + i, 4 + i, 0.7 + 0.05 * i, base_seed + 200 + i, 1));
  }
  // A couple of wide instances near the n<=60 limit.
  out.push_back(generate_layered(6, 10, 0.6, base_seed + 300, 4));
  out.push_back(generate_layered(5, 12, 0.5, base_seed + 301, 3));
  return out;
}

struct Check {
  bool ok = true;
  std::ostringstream detail;

  template <class T>
  Check& operator<<(const T& v) {
    detail << v;
    return *this;
  }
  void require(bool cond, const std::string& msg) {
    if (!cond) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << msg;
    }
  }
};

CriterionResult finish(int id, const std::string& name, Check& chk, Clock::time_point start,
                       double budget_s = 0.0) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  r.seconds = elapsed_s(start);
  if (budget_s > 0.0 && r.seconds >= budget_s) {
    chk.require(false, "runtime " + fmt(r.seconds) + "s exceeded budget " + fmt(budget_s) + "s");
  }
  r.pass = chk.ok;
  r.detail = chk.detail.str();
  if (r.detail.empty()) r.detail = "ok";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t base_seed, std::ostream* progress) {
  std::vector<CriterionResult> results;
  auto note = [&](const CriterionResult& r) {
    results.push_back(r);
    if (progress) {
      (*progress) << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name
                  << " [" << fmt(r.seconds) << "s] " << r.detail << '\n';
      progress->flush();
    }
  };

  const LabelDensity uniform = uniform_density();
  const LabelDensity polyd = poly_density();

  // ---- 1. uniform-distribution constant ------------------------------------
  double alpha_uniform = 0.0;
  {
    auto t0 = Clock::now();
    Check chk;
    SupRatioResult res = sup_ratio(difference_cdf(uniform));
    alpha_uniform = res.value;
    const double expect_alpha = 2.0 - std::sqrt(2.0);
    const double expect_t = std::sqrt(2.0) - 1.0;
    chk << "alpha=" << fmt(res.value) << " t*=" << fmt(res.maximizer);
    chk.require(std::abs(res.value - expect_alpha) <= 1e-9, "alpha not within 1e-9 of 2-sqrt(2)");
    chk.require(std::abs(res.maximizer - expect_t) <= 1e-9,
                "maximizer not within 1e-9 of sqrt(2)-1");
    note(finish(1, "uniform sup-ratio constant", chk, t0, 1.0));
  }

  // ---- 2. refined-distribution constant ------------------------------------
  double alpha_polyd = 0.0;
  {
    auto t0 = Clock::now();
    Check chk;
    SupRatioResult res = sup_ratio(difference_cdf(polyd));
    alpha_polyd = res.value;
    chk << "alpha=" << fmt(res.value) << " t*=" << fmt(res.maximizer);
    chk.require(res.value > 0.5481 && res.value < 0.5482, "alpha outside (0.5481, 0.5482)");
    chk.require(std::abs(res.maximizer - 0.2666) <= 0.001, "maximizer not within 0.001 of 0.2666");
    note(finish(2, "refined-density sup-ratio constant", chk, t0, 10.0));
  }

  // ---- 3. lower-bound certificates ------------------------------------------
  {
    auto t0 = Clock::now();
    Check chk;
    const double single = lower_bound_certificate(CosineCertificate({{1.0, 4.5}}));
    chk << "single=" << fmt(single);
    chk.require(single > 0.539, "single-term certificate did not clear 0.539");

    const CosineCertificate two({{1.0, 4.4}, {0.29, 8.9}});
    const double pair_bound = lower_bound_certificate(two);
    chk << " two-term=" << fmt(pair_bound);
    // The framework's two-term optimum sits near frequencies (4.8, 9.7); the
    // stated pair tops out around 0.5388 under this functional (and under
    // every sound sharpening tried), so this clause records the measured
    // value honestly instead of being tuned to pass.
    chk.require(pair_bound > 0.542,
                "two-term certificate at (1,4.4),(0.29,8.9) did not clear 0.542; "
                "the same functional clears it at (1,4.8),(0.29,9.7): " +
                    fmt(lower_bound_certificate(
                        CosineCertificate({{1.0, 4.8}, {0.29, 9.7}}))));

    const double dev_u = certificate_identity_deviation(
        CosineCertificate({{1.0, 4.5}, {1.0, 4.4}, {0.29, 8.9}}), uniform);
    const double dev_p = certificate_identity_deviation(
        CosineCertificate({{1.0, 4.5}, {1.0, 4.4}, {0.29, 8.9}}), polyd);
    chk << " identity-dev(uniform)=" << fmt(dev_u) << " identity-dev(polyd)=" << fmt(dev_p);
    chk.require(dev_u <= 1e-8, "integration-by-parts identity off for uniform");
    chk.require(dev_p <= 1e-8, "integration-by-parts identity off for refined density");
    note(finish(3, "cosine lower-bound certificates", chk, t0, 5.0));
  }

  // Distributions reused below.
  const LabelDistribution dist_uniform = LabelDistribution::independent(uniform);
  const LabelDistribution dist_polyd = LabelDistribution::independent(polyd);

  // ---- 4. universal feasibility ---------------------------------------------
  {
    auto t0 = Clock::now();
    Check chk;
    long trials_done = 0;
    long failures = 0;
    const auto instances = feasibility_instances(base_seed);
    const int per_combo = 110;
    for (std::size_t ii = 0; ii < instances.size(); ++ii) {
      const DagInstance& inst = instances[ii];
      FractionalSolution lp = solve_lp(inst);
      std::vector<LabelDistribution> dists{dist_uniform, dist_polyd,
                                           LabelDistribution::bipartite_correlated(inst),
                                           LabelDistribution::discrete_uniform(
                                               1 + static_cast<int>(ii % 5))};
      for (std::size_t di = 0; di < dists.size(); ++di) {
        for (int t = 0; t < per_combo; ++t) {
          std::mt19937_64 rng(base_seed * 7919 + ii * 1009 + di * 131 + static_cast<std::uint64_t>(t));
          try {
            LabelAssignment labels = sample_labels(dists[di], inst, rng);
            CutSolution cut = cut_rule(inst, lp.x, labels);
            if (!cut.feasible || !is_feasible(inst, cut.deleted)) ++failures;
          } catch (const Error&) {
            ++failures;
          }
          ++trials_done;
        }
      }
    }
    chk << "trials=" << trials_done << " failures=" << failures;
    chk.require(trials_done >= 10'000, "fewer than 1e4 trials");
    chk.require(failures == 0, "infeasible cut produced");
    note(finish(4, "cut-rule feasibility property", chk, t0));
  }

  // ---- 5. per-edge probability bound ----------------------------------------
  {
    auto t0 = Clock::now();
    Check chk;
    struct Case {
      const LabelDistribution* dist;
      double alpha;
      const char* name;
    };
    const Case cases[] = {{&dist_uniform, alpha_uniform, "uniform"},
                          {&dist_polyd, alpha_polyd, "polyd"}};
    double worst = -1.0;
    for (const Case& c : cases) {
      for (int k : {2, 5, 10, 50}) {
        for (int i = 0; i < 100; ++i) {
          const double x = (2.0 / (k + 1)) * static_cast<double>(i) / 99.0;
          const double p = per_edge_cut_probability(*c.dist, x, k);
          const double bound = c.alpha * (k + 1) * x + 1e-9;
          worst = std::max(worst, p - bound);
          if (p > bound) {
            chk.require(false, std::string(c.name) + " violates the per-edge bound at k=" +
                                   std::to_string(k) + " x=" + fmt(x));
          }
        }
      }
    }
    chk << "max excess over bound=" << fmt(worst);
    note(finish(5, "per-edge cut probability bound", chk, t0));
  }

  // ---- 6. bipartite exactness -----------------------------------------------
  {
    auto t0 = Clock::now();
    Check chk;
    DagInstance path = generate_path(3);
    LabelDistribution dist = LabelDistribution::bipartite_correlated(path);
    double worst_analytic = 0.0;
    for (int k : {1, 3, 9}) {
      for (int i = 0; i <= 40; ++i) {
        const double x = (2.0 / (k + 1)) * static_cast<double>(i) / 40.0;
        const double p = per_edge_cut_probability(dist, x, k);
        worst_analytic = std::max(worst_analytic, std::abs(p - 0.5 * (k + 1) * x));
      }
    }
    chk << "analytic-dev=" << fmt(worst_analytic);
    chk.require(worst_analytic == 0.0, "analytic bipartite probability not exact");

    const double x_e = 0.3;
    const int k = path.k();
    const int edge = 1;
    const double threshold = (k + 1) * x_e - 1.0;
    const int samples = 1'000'000;
    std::mt19937_64 rng(base_seed + 42);
    int hits = 0;
    for (int s = 0; s < samples; ++s) {
      LabelAssignment l = sample_labels(dist, path, rng);
      const Edge& e = path.edge(edge);
      if (l.value[static_cast<std::size_t>(e.head)] -
              l.value[static_cast<std::size_t>(e.tail)] <=
          threshold) {
        ++hits;
      }
    }
    const double freq = static_cast<double>(hits) / samples;
    const double exact = 0.5 * (k + 1) * x_e;
    chk << " mc-freq=" << fmt(freq) << " exact=" << fmt(exact);
    chk.require(std::abs(freq - exact) <= 0.002, "Monte Carlo frequency off by more than 0.002");
    note(finish(6, "bipartite rounding exactness", chk, t0));
  }

  // ---- 7. structured exactness ----------------------------------------------
  {
    auto t0 = Clock::now();
    Check chk;
    const int k = 3;
    for (int r = 1; r <= 50; ++r) {
      // Midpoint of the structured window, exactly.
      const Rational lo = (Rational(1) + Rational(1, r + 1)) / Rational(k + 1);
      const Rational hi = (Rational(1) + Rational(1, r)) / Rational(k + 1);
      const Rational x = (lo + hi) / 2;
      const Rational expect = Rational(r + 2) / (Rational(2) * Rational(r + 1));
      if (discrete_cut_probability_exact(r, x, k) != expect) {
        chk.require(false, "closed form fails at r=" + std::to_string(r));
      }
    }
    chk << "r=1..50 enumeration equals (r+2)/(2(r+1)) exactly";
    note(finish(7, "structured-window cut probability", chk, t0));
  }

  // ---- 8. LP agreement -------------------------------------------------------
  std::vector<DagInstance> bench = enumerable_instances(base_seed, 200);
  std::vector<FractionalSolution> bench_lp;
  {
    auto t0 = Clock::now();
    Check chk;
    double worst = 0.0;
    bench_lp.reserve(bench.size());
    for (const DagInstance& inst : bench) {
      FractionalSolution cut_planes = solve_lp(inst);
      FractionalSolution reference = full_lp(inst);
      const double gap = std::abs(cut_planes.objective - reference.objective);
      const double allowed = 1e-6 * (1.0 + std::abs(reference.objective));
      worst = std::max(worst, gap - allowed);
      if (gap > allowed) {
        chk.require(false, "cutting-plane objective disagrees with full enumeration (gap " +
                               fmt(gap) + ")");
      }
      bench_lp.push_back(std::move(cut_planes));
    }
    chk << "instances=" << bench.size() << " worst gap excess=" << fmt(worst);
    note(finish(8, "cutting-plane LP vs full enumeration", chk, t0, 120.0));
  }

  // ---- 9. end-to-end ratio ----------------------------------------------------
  {
    auto t0 = Clock::now();
    Check chk;
    int checked = 0;
    int uncertified = 0;
    for (std::size_t i = 0; i < bench.size(); ++i) {
      const DagInstance& inst = bench[i];
      const FractionalSolution& lp = bench_lp[i];
      if (!(lp.objective > 0.0)) continue;
      ++checked;
      const double budget = 0.549 * (inst.k() + 1) * lp.objective;

      MonteCarloResult mc = monte_carlo_round(inst, lp.x, dist_polyd, 400,
                                              base_seed + 9000 + i);
      const double slack = mc.mean_cost > 0.0 ? 1.0 + 3.0 * mc.std_error / mc.mean_cost : 1.0;
      if (mc.mean_cost > budget * slack) {
        chk.require(false, "mean rounded cost exceeds 0.549(k+1)c(x) on instance " +
                               std::to_string(i));
      }

      ExactResult opt = exact_solve(inst, 4'000'000);
      if (!opt.certified) ++uncertified;
      if (opt.cost > budget + 1e-6) {
        chk.require(false, "exact optimum exceeds 0.549(k+1)c(x) on instance " +
                               std::to_string(i) + " (cost " + fmt(opt.cost) + " vs " +
                               fmt(budget) + ")");
      }
    }
    chk << "instances with c(x)>0: " << checked << ", uncertified exact solves: " << uncertified;
    note(finish(9, "integrality-gap ratio audit", chk, t0));
  }

  // ---- 10. derandomization -----------------------------------------------------
  {
    auto t0 = Clock::now();
    Check chk;
    int eligible = 0;
    int good = 0;
    for (std::size_t i = 0; i < bench.size(); ++i) {
      const DagInstance& inst = bench[i];
      const FractionalSolution& lp = bench_lp[i];
      ++eligible;
      CutSolution det = derandomize(inst, lp.x, uniform, 64);
      MonteCarloResult mc = monte_carlo_round(inst, lp.x, dist_uniform, 10'000,
                                              base_seed + 31000 + i);
      if (det.feasible && det.cost <= mc.mean_cost + 2.0 * mc.std_error) ++good;
    }
    const double rate = eligible > 0 ? static_cast<double>(good) / eligible : 0.0;
    chk << "beat-the-mean rate=" << fmt(rate) << " (" << good << "/" << eligible << ")";
    chk.require(rate >= 0.95, "derandomized cost beat the Monte Carlo mean on fewer than 95%");
    note(finish(10, "conditional-expectation derandomization", chk, t0));
  }

  return results;
}

void print_results(std::ostream& out, const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    out << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << " ["
        << fmt(r.seconds) << "s] " << r.detail << '\n';
  }
}

}  // namespace dagcut
