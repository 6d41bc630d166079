// End-to-end checks of the dagcut binary. The binary path arrives as the
// first positional argument (wired up by CMake).
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_binary;
std::string g_workdir;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = g_binary + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    res.output.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string tmp_path(const std::string& name) { return g_workdir + "/" + name; }

}  // namespace

TEST_CASE("analyze-dist reports the uniform constant") {
  RunResult r = run("analyze-dist --dist uniform");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("sup_ratio 0.5857864376") != std::string::npos);
  CHECK(r.output.find("maximizer 0.414213562") != std::string::npos);
}

TEST_CASE("analyze-dist writes a CSV curve") {
  const std::string csv = tmp_path("uniform.csv");
  RunResult r = run("analyze-dist --dist uniform --csv " + csv + " --points 101");
  CHECK(r.exit_code == 0);
  const std::string content = slurp(csv);
  CHECK(content.rfind("t,F,ratio\n", 0) == 0);
  CHECK(content.find("\n0,0.5,0.5\n") != std::string::npos);  // F(0)=1/2
}

TEST_CASE("lower-bound evaluates certificates") {
  RunResult r = run("lower-bound --terms 1:4.5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("lower_bound 0.539031") != std::string::npos);

  RunResult invalid = run("lower-bound --terms 1:6.283185307179586");
  CHECK(invalid.exit_code == 2);
  CHECK(invalid.output.find("InvalidCertificate") != std::string::npos);
}

TEST_CASE("round on a path is feasible and no cheaper than the LP") {
  RunResult r = run("round --gen path:k=3 --dist uniform --trials 1 --seed 0");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"status\": \"ok\"") != std::string::npos);
  // LP objective 1, any feasible cut costs >= 1 on unit-cost edges.
  CHECK(r.output.find("\"lp_objective\": 1.0") != std::string::npos);
  CHECK(r.output.find("\"cost\": 1.0") != std::string::npos);
}

TEST_CASE("auto-structured falls back when no window fits") {
  RunResult r = run("round --gen layered:L=4,width=3,density=0.9,seed=5 "
                    "--dist auto-structured --trials 64 --seed 1");
  CHECK(r.exit_code == 0);
  const bool structured = r.output.find("\"method\": \"structured-r") != std::string::npos;
  const bool fallback = r.output.find("\"method\": \"polyd-fallback\"") != std::string::npos;
  CHECK((structured || fallback));
}

TEST_CASE("reports are byte-identical for identical input, flags, and seed") {
  const std::string rep1 = tmp_path("r1.json");
  const std::string rep2 = tmp_path("r2.json");
  const std::string flags = "round --gen layered:L=4,width=3,density=0.8,seed=9 "
                            "--dist polyd --trials 200 --seed 3 --report ";
  CHECK(run(flags + rep1).exit_code == 0);
  CHECK(run(flags + rep2).exit_code == 0);
  CHECK(slurp(rep1) == slurp(rep2));

  const std::string rep3 = tmp_path("r3.json");
  const std::string other = "round --gen layered:L=4,width=3,density=0.8,seed=9 "
                            "--dist polyd --trials 200 --seed 4 --report ";
  CHECK(run(other + rep3).exit_code == 0);
  CHECK(slurp(rep1) != slurp(rep3));
}

TEST_CASE("solve and exact agree on a path instance file") {
  const std::string inst = tmp_path("inst.txt");
  {
    std::ofstream f(inst, std::ios::binary);
    f << "4 3 3\n0 1 3\n1 2 1\n2 3 2\n";
  }
  RunResult s = run("solve --input " + inst);
  CHECK(s.exit_code == 0);
  CHECK(s.output.find("\"lp_objective\": 1.0") != std::string::npos);

  RunResult e = run("exact --input " + inst);
  CHECK(e.exit_code == 0);
  CHECK(e.output.find("\"cost\": 1.0") != std::string::npos);
  CHECK(e.output.find("\"status\": \"optimal\"") != std::string::npos);
}

TEST_CASE("derandomized rounding through the CLI") {
  RunResult r = run("round --gen layered:L=4,width=3,density=0.8,seed=2 "
                    "--dist uniform --derandomize --grid 32");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"method\": \"derandomize-uniform\"") != std::string::npos);
}

TEST_CASE("parse failures use exit code 2 with a machine-readable line") {
  const std::string bad = tmp_path("bad.txt");
  {
    std::ofstream f(bad, std::ios::binary);
    f << "3 2 5\n0 1 1\n1 2 1\n";
  }
  RunResult r = run("solve --input " + bad);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("error: KOutOfRange") != std::string::npos);

  RunResult missing = run("solve --input " + tmp_path("does-not-exist.txt"));
  CHECK(missing.exit_code == 2);
  CHECK(missing.output.find("error: ParseError") != std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: cli_test <dagcut-binary> <workdir>\n");
    return 2;
  }
  g_binary = argv[1];
  g_workdir = argv[2];
  doctest::Context ctx(1, argv);
  return ctx.run();
}
