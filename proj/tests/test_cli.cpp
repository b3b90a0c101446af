// End-to-end tests of the command-line tool, driven through a subprocess.
// The binary path and the shipped data directory arrive via the environment
// (LIEKAHLER_BIN / LIEKAHLER_DATA, set by the build system).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

std::string binary_path() {
  const char* bin = std::getenv("LIEKAHLER_BIN");
  REQUIRE(bin != nullptr);
  return bin;
}

std::string data_path(const std::string& file) {
  const char* dir = std::getenv("LIEKAHLER_DATA");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + file;
}

RunResult run_cli(const std::string& args) {
  const std::string cmd = "\"" + binary_path() + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.output.append(buf, n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("check: built-in example passes and prints the scalar curvature") {
  const RunResult r = run_cli("check --example hyperbolic");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "s = -2"));
  CHECK(contains(r.output, "jacobi_identity"));
  CHECK_FALSE(contains(r.output, "FAIL"));
}

TEST_CASE("check: shipped document reproduces the example") {
  const RunResult r = run_cli("check " + data_path("hyperbolic.json"));
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "s = -2"));
}

TEST_CASE("check: corrupted document fails validation with exit 2") {
  const RunResult r = run_cli("check " + data_path("corrupt_antisym.json"));
  INFO(r.output);
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "FAIL"));
  CHECK(contains(r.output, "bracket_antisymmetry"));
}

TEST_CASE("check: malformed JSON is an input error with exit 2") {
  const RunResult r = run_cli("check " + data_path("malformed.json"));
  INFO(r.output);
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "error"));
}

TEST_CASE("check: unknown example name exits 2") {
  const RunResult r = run_cli("check --example nosuch");
  CHECK(r.exit_code == 2);
}

TEST_CASE("no subcommand is a usage error") {
  const RunResult r = run_cli("");
  CHECK(r.exit_code == 2);
}

TEST_CASE("split: Einstein input exits 3") {
  const RunResult r = run_cli("split --example chn");
  INFO(r.output);
  CHECK(r.exit_code == 3);
  CHECK(contains(r.output, "Einstein"));
}

TEST_CASE("split: three eigenvalue clusters exit 4") {
  const RunResult r = run_cli("split --example product --curvatures=-1,-2,-3");
  INFO(r.output);
  CHECK(r.exit_code == 4);
}

TEST_CASE("split: mixed-sign eigenvalues refuse Einstein normalization with exit 2") {
  const RunResult r = run_cli("split --example product --curvatures=-1,0 --einstein");
  INFO(r.output);
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "same sign"));
}

TEST_CASE("split: full deformation run on product(-1,-2)") {
  const RunResult r = run_cli("split --example product --t 0.1,0.5,2,10 --einstein");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "lambda = -2"));
  CHECK(contains(r.output, "mu = -1"));
  CHECK(contains(r.output, "einstein t = 0.5"));
  CHECK(contains(r.output, "s = -8"));
}

TEST_CASE("verify: all suites pass on the flipped tube") {
  const RunResult r = run_cli("verify --example lorentz_tube --n 3 --suite all");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "rstar[jbar]"));
  CHECK(contains(r.output, "theorem0"));
  CHECK_FALSE(contains(r.output, "FAIL"));
}

TEST_CASE("verify: selected suites on the product") {
  const RunResult r = run_cli("verify --example product --suite prop2,sekigawa");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "prop2[j]"));
  CHECK(contains(r.output, "sekigawa[j]"));
}

TEST_CASE("verify: unknown suite token exits 2") {
  const RunResult r = run_cli("verify --example product --suite bogus");
  INFO(r.output);
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "unknown suite"));
}

TEST_CASE("verify: loaded document behaves like the example") {
  const RunResult r = run_cli("verify " + data_path("lorentz_tube_n3.json") + " --suite rstar");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "rstar[jbar]"));
  CHECK_FALSE(contains(r.output, "FAIL"));
}

TEST_CASE("export: deterministic output that round-trips through check") {
  const std::string out_a = "cli_export_a.json";
  const std::string out_b = "cli_export_b.json";
  const RunResult ra = run_cli("export --example lorentz_tube --n 3 --out " + out_a);
  INFO(ra.output);
  CHECK(ra.exit_code == 0);
  const RunResult rb = run_cli("export --example lorentz_tube --n 3 --out " + out_b);
  CHECK(rb.exit_code == 0);
  CHECK(read_file(out_a) == read_file(out_b));

  const RunResult rc = run_cli("check " + out_a);
  INFO(rc.output);
  CHECK(rc.exit_code == 0);
  CHECK(contains(rc.output, "s = -6"));
  std::remove(out_a.c_str());
  std::remove(out_b.c_str());
}

TEST_CASE("export without --out exits 2") {
  const RunResult r = run_cli("export --example chn");
  CHECK(r.exit_code == 2);
}

TEST_CASE("check --out writes a JSON report") {
  const std::string out = "cli_report.json";
  const RunResult r = run_cli("check --example product --out " + out);
  INFO(r.output);
  CHECK(r.exit_code == 0);
  const std::string report = read_file(out);
  CHECK(contains(report, "\"command\": \"check\""));
  CHECK(contains(report, "\"pass\": true"));
  std::remove(out.c_str());
}
