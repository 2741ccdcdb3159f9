// Drives the installed command-line binary end to end through a shell,
// checking exit codes, report files, and the bit-exact --dump-config loop.
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "philap/config.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("PHILAP_CLI");
  REQUIRE_MESSAGE(p != nullptr, "PHILAP_CLI must point at the binary under test");
  return p;
}

RunResult run_cli(const std::string& args) {
  std::string cmd = "\"" + cli_path() + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch_dir() {
  fs::path d = fs::temp_directory_path() / ("philap_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::string why = p.string() + " should exist";
  REQUIRE_MESSAGE(in.good(), why);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("verify on a passing built-in exits 0 and writes its report") {
  fs::path d = scratch_dir();
  RunResult r = run_cli("verify example51 --out \"" + d.string() + "\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("[PASS]") != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
  std::string rep = slurp(d / "example51_verify.json");
  CHECK(rep.find("\"all_passed\": true") != std::string::npos);
}

TEST_CASE("usage and configuration mistakes exit 2") {
  CHECK(run_cli("ricceri example51 --r 0").exit_code == 2);
  CHECK(run_cli("no-such-subcommand").exit_code == 2);
  CHECK(run_cli("ricceri example51").exit_code == 2);       // --r is required
  CHECK(run_cli("verify no_such_config.json").exit_code == 2);
  CHECK(run_cli("solve example51 --start-radius -1").exit_code == 2);
}

TEST_CASE("structurally invalid configurations fail verify with exit 1") {
  fs::path d = scratch_dir();
  philap::Config cfg = philap::builtin_config("example51");
  cfg.w3[0] = 0.0;
  fs::path file = d / "broken.json";
  {
    std::ofstream out(file, std::ios::binary);
    out << philap::config_to_json(cfg) << "\n";
  }
  RunResult r = run_cli("verify \"" + file.string() + "\" --out \"" + d.string() + "\"");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("[FAIL]") != std::string::npos);
}

TEST_CASE("dump-config round trips byte for byte through a file") {
  fs::path d = scratch_dir();
  RunResult first = run_cli("verify example51 --dump-config");
  REQUIRE(first.exit_code == 0);
  REQUIRE(!first.out.empty());
  fs::path file = d / "roundtrip.json";
  {
    std::ofstream out(file, std::ios::binary);
    out << first.out;
  }
  RunResult second = run_cli("verify \"" + file.string() + "\" --dump-config");
  CHECK(second.exit_code == 0);
  CHECK(first.out == second.out);
}

TEST_CASE("solve writes the solution table and manifest") {
  fs::path d = scratch_dir();
  RunResult r = run_cli("solve example51 --starts 1 --start-radius 0 --seed 7 --out \"" +
                        d.string() + "\"");
  CHECK(r.exit_code == 0);
  std::string csv = slurp(d / "example51_solutions.csv");
  CHECK(csv.rfind("index,action,grad_inf,residual_inf,start_index,iterations,x0", 0) == 0);
  CHECK(csv.find("\n0,") != std::string::npos);  // at least one data row
  std::string man = slurp(d / "example51_manifest.json");
  CHECK(man.find("\"has_trivial\": true") != std::string::npos);
  CHECK(man.find("\"config\"") != std::string::npos);
}

TEST_CASE("ricceri run prints the one-sided summary and writes its report") {
  fs::path d = scratch_dir();
  RunResult r = run_cli("ricceri example51 --r 1 --mu 2 --starts 8 --samples 500 --out \"" +
                        d.string() + "\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("lambda in ]0,") != std::string::npos);
  std::string rep = slurp(d / "example51_ricceri.json");
  CHECK(rep.find("\"trivial_minimum_assumed\": true") != std::string::npos);
}
