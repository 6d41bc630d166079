// dagcut: solve, round, and analyze DAG edge deletion instances.
//
// Subcommands:
//   solve         LP relaxation only
//   round         LP + randomized label rounding (or derandomization)
//   exact         branch-and-bound optimum
//   analyze-dist  difference-CDF curve and sup-ratio for a label density
//   lower-bound   cosine certificate evaluation
//   verify        full acceptance battery
//
// Exit codes: 0 success, 1 verification failure, 2 parse/validation error,
// 3 numerical failure, 4 node budget exceeded.
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dagcut/certificates.hpp"
#include "dagcut/densities.hpp"
#include "dagcut/errors.hpp"
#include "dagcut/exact.hpp"
#include "dagcut/io.hpp"
#include "dagcut/lp.hpp"
#include "dagcut/rounding.hpp"
#include "dagcut/verify.hpp"

namespace {

using dagcut::DagInstance;
using dagcut::Error;
using dagcut::ErrorCode;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitBudget = 4;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NumericalFailure:
    case ErrorCode::InfeasibleInput:
      return kExitNumerical;
    default:
      return kExitParse;
  }
}

struct InstanceArgs {
  std::string input;
  std::string gen;

  DagInstance load() const {
    if (!input.empty()) return dagcut::parse_instance_file(input);
    if (!gen.empty()) return dagcut::generate_from_spec(gen);
    throw Error(ErrorCode::BadParams, "provide --input PATH or --gen SPEC");
  }
};

void add_instance_flags(CLI::App* cmd, InstanceArgs& args) {
  auto* input = cmd->add_option("--input", args.input, "instance file");
  auto* gen = cmd->add_option("--gen", args.gen,
                              "generator spec, e.g. path:k=3 or "
                              "layered:L=4,width=3,density=0.8,seed=7");
  input->excludes(gen);
}

struct Report {
  json body = json::object();
  double wall_ms = 0.0;

  void print(std::ostream& out) const {
    out << body.dump(2) << '\n';
    out << "wall_ms " << dagcut::format_double(wall_ms) << '\n';
  }
  // The file copy deliberately omits wall time: identical inputs, flags and
  // seed must produce byte-identical reports.
  void save(const std::string& path) const {
    if (path.empty()) return;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write report to '" + path + "'");
    f << body.dump(2) << '\n';
  }
};

json instance_summary(const DagInstance& inst) {
  return json{{"n", inst.vertex_count()}, {"m", inst.edge_count()}, {"k", inst.k()}};
}

double ratio_of(const DagInstance& inst, double cost, double lp_objective) {
  if (lp_objective <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return cost / ((inst.k() + 1) * lp_objective);
}

void set_ratio(json& j, const char* key, double ratio) {
  if (std::isnan(ratio)) {
    j[key] = nullptr;
  } else {
    j[key] = ratio;
  }
}

dagcut::LabelDensity density_by_name(const std::string& name) {
  if (name == "uniform") return dagcut::uniform_density();
  if (name == "polyd") return dagcut::poly_density();
  throw Error(ErrorCode::BadParams, "unknown density '" + name + "'");
}

std::vector<dagcut::CosineTerm> parse_terms(const std::string& spec) {
  std::vector<dagcut::CosineTerm> terms;
  std::istringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::BadParams, "--terms items must look like a:t");
    }
    try {
      terms.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadParams, "bad number in --terms item '" + item + "'");
    }
  }
  if (terms.empty()) throw Error(ErrorCode::BadParams, "--terms is empty");
  return terms;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"label-rounding solver for DAG edge deletion"};
  app.require_subcommand(1);

  InstanceArgs solve_inst, round_inst, exact_inst;
  std::string report_path, csv_path;
  std::uint64_t seed = 0;
  int trials = 1000;
  std::string dist_name = "uniform";
  bool do_derandomize = false;
  int grid = 64;
  long budget = 1'000'000;
  std::string terms_spec;
  int csv_points = 2001;

  auto* solve = app.add_subcommand("solve", "solve the path-covering LP relaxation");
  add_instance_flags(solve, solve_inst);
  solve->add_option("--report", report_path, "write a JSON report");

  auto* round = app.add_subcommand("round", "LP + randomized label rounding");
  add_instance_flags(round, round_inst);
  round->add_option("--dist", dist_name,
                    "label distribution: uniform|polyd|bipartite|auto-structured");
  round->add_option("--trials", trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  round->add_option("--seed", seed, "RNG seed");
  round->add_flag("--derandomize", do_derandomize, "conditional-expectation rounding");
  round->add_option("--grid", grid, "derandomization grid size")->check(CLI::PositiveNumber);
  round->add_option("--report", report_path, "write a JSON report");

  auto* exact = app.add_subcommand("exact", "branch-and-bound optimum");
  add_instance_flags(exact, exact_inst);
  exact->add_option("--budget", budget, "node budget")->check(CLI::PositiveNumber);
  exact->add_option("--report", report_path, "write a JSON report");

  auto* analyze = app.add_subcommand("analyze-dist", "difference CDF and sup-ratio");
  analyze->add_option("--dist", dist_name, "density: uniform|polyd");
  analyze->add_option("--csv", csv_path, "write t,F,ratio rows");
  analyze->add_option("--points", csv_points, "CSV grid size")->check(CLI::PositiveNumber);

  auto* lower = app.add_subcommand("lower-bound", "evaluate cosine certificates");
  lower->add_option("--terms", terms_spec, "certificate terms \"a:t,a:t,...\"")->required();

  auto* verify = app.add_subcommand("verify", "run the acceptance battery");
  verify->add_option("--seed", seed, "base seed");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto t0 = std::chrono::steady_clock::now();
    auto wall_ms = [&] {
      return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
    };

    if (solve->parsed()) {
      DagInstance inst = solve_inst.load();
      dagcut::FractionalSolution lp = dagcut::solve_lp(inst);
      Report rep;
      rep.body["instance"] = instance_summary(inst);
      rep.body["method"] = "lp";
      rep.body["lp_objective"] = lp.objective;
      rep.body["iterations"] = lp.iterations;
      rep.body["status"] =
          lp.status == dagcut::LpStatus::Optimal ? "optimal" : "iteration-limit";
      rep.wall_ms = wall_ms();
      rep.save(report_path);
      rep.print(std::cout);
      return kExitOk;
    }

    if (round->parsed()) {
      DagInstance inst = round_inst.load();
      dagcut::FractionalSolution lp = dagcut::solve_lp(inst);
      Report rep;
      rep.body["instance"] = instance_summary(inst);
      rep.body["lp_objective"] = lp.objective;
      rep.body["seed"] = seed;

      dagcut::CutSolution chosen;
      std::string method;
      if (do_derandomize) {
        if (dist_name != "uniform" && dist_name != "polyd") {
          throw Error(ErrorCode::BadParams, "--derandomize needs an independent density");
        }
        chosen = dagcut::derandomize(inst, lp.x, density_by_name(dist_name), grid);
        method = "derandomize-" + dist_name;
      } else if (dist_name == "auto-structured") {
        try {
          dagcut::StructuredResult sr = dagcut::structured_round(inst, lp.x, seed);
          chosen = std::move(sr.cut);
          method = "structured-r" + std::to_string(sr.r);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NotStructured) throw;
          dagcut::MonteCarloResult mc = dagcut::monte_carlo_round(
              inst, lp.x, dagcut::LabelDistribution::independent(dagcut::poly_density()),
              trials, seed);
          chosen = std::move(mc.best);
          method = "polyd-fallback";
          rep.body["mean_cost"] = mc.mean_cost;
          set_ratio(rep.body, "mean_ratio", mc.empirical_ratio);
        }
      } else {
        dagcut::LabelDistribution dist =
            dist_name == "bipartite"
                ? dagcut::LabelDistribution::bipartite_correlated(inst, seed)
                : dagcut::LabelDistribution::independent(density_by_name(dist_name), seed);
        dagcut::MonteCarloResult mc = dagcut::monte_carlo_round(inst, lp.x, dist, trials, seed);
        chosen = std::move(mc.best);
        method = dist_name;
        rep.body["trials"] = trials;
        rep.body["mean_cost"] = mc.mean_cost;
        rep.body["std_error"] = mc.std_error;
        set_ratio(rep.body, "mean_ratio", mc.empirical_ratio);
      }

      if (!dagcut::is_feasible(inst, chosen.deleted)) {
        throw Error(ErrorCode::InfeasibleInput, "emitted solution failed re-verification");
      }
      rep.body["method"] = method;
      rep.body["cost"] = chosen.cost;
      set_ratio(rep.body, "ratio", ratio_of(inst, chosen.cost, lp.objective));
      rep.body["deleted"] = chosen.deleted;
      rep.body["status"] = "ok";
      rep.wall_ms = wall_ms();
      rep.save(report_path);
      rep.print(std::cout);
      return kExitOk;
    }

    if (exact->parsed()) {
      DagInstance inst = exact_inst.load();
      dagcut::FractionalSolution lp = dagcut::solve_lp(inst);
      dagcut::ExactResult res = dagcut::exact_solve(inst, budget);
      if (!dagcut::is_feasible(inst, res.deleted)) {
        throw Error(ErrorCode::InfeasibleInput, "exact solution failed re-verification");
      }
      Report rep;
      rep.body["instance"] = instance_summary(inst);
      rep.body["method"] = "exact";
      rep.body["lp_objective"] = lp.objective;
      rep.body["cost"] = res.cost;
      set_ratio(rep.body, "ratio", ratio_of(inst, res.cost, lp.objective));
      rep.body["nodes"] = res.nodes_explored;
      rep.body["deleted"] = res.deleted;
      rep.body["status"] = res.certified ? "optimal" : "budget-exceeded";
      rep.wall_ms = wall_ms();
      rep.save(report_path);
      rep.print(std::cout);
      return res.certified ? kExitOk : kExitBudget;
    }

    if (analyze->parsed()) {
      dagcut::LabelDensity d = density_by_name(dist_name);
      dagcut::PiecewisePoly F = dagcut::difference_cdf(d);
      dagcut::SupRatioResult sr = dagcut::sup_ratio(F);
      if (!csv_path.empty()) {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) throw Error(ErrorCode::ParseError, "cannot write CSV to '" + csv_path + "'");
        dagcut::write_cdf_csv(f, F, csv_points);
      }
      std::cout << "density " << d.name() << '\n'
                << "sup_ratio " << dagcut::format_double(sr.value) << '\n'
                << "maximizer " << dagcut::format_double(sr.maximizer) << '\n';
      return kExitOk;
    }

    if (lower->parsed()) {
      dagcut::CosineCertificate cert(parse_terms(terms_spec));
      const double bound = dagcut::lower_bound_certificate(cert);
      std::cout << "lower_bound " << dagcut::format_double(bound) << '\n';
      return kExitOk;
    }

    if (verify->parsed()) {
      const auto results = dagcut::run_acceptance(seed, &std::cout);
      int failed = 0;
      for (const auto& r : results) {
        if (!r.pass) ++failed;
      }
      if (failed > 0) {
        std::cout << failed << " criterion(s) failed\n";
        return kExitVerifyFailed;
      }
      std::cout << "all criteria passed\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitParse;
}
