#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "test_support.hpp"
#include "wf/cli.hpp"
#include "wf/families.hpp"
#include "wf/matrix_io.hpp"

using namespace wf;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "wf_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_operator(const std::string& name, const HermitianOperator& x) {
  const fs::path p = scratch_dir() / name;
  write_matrix_file(p.string(), x);
  return p;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(WF_CLI_PATH) + " " + args + " > " + (scratch_dir() / "out.json").string() +
                          " 2> " + (scratch_dir() / "err.txt").string();
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

struct InProcess {
  int code;
  nlohmann::json report;
  std::string err;
};

InProcess run(std::vector<std::string> args) {
  args.insert(args.begin(), "wf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  nlohmann::json j;
  if (!out.str().empty()) j = nlohmann::json::parse(out.str(), nullptr, false);
  return {code, j, err.str()};
}

}  // namespace

TEST_CASE("binary exit codes") {
  const fs::path w = write_operator("w.json", sigma1().shifted(-0.5));
  const fs::path id = write_operator("id.json", HermitianOperator::identity({2, 2}));
  CHECK(run_binary("classify " + w.string()) == kExitWitness);
  CHECK(run_binary("classify " + id.string()) == kExitNotWitness);

  const fs::path bad = scratch_dir() / "bad.json";
  std::ofstream(bad) << "{\"dims\": [2, 2], \"re\": [[1, 0]";
  CHECK(run_binary("classify " + bad.string()) == kExitError);
  CHECK(run_binary("classify " + (scratch_dir() / "missing.json").string()) == kExitError);

  const fs::path rho = write_operator("rho.json", HermitianOperator::identity({2, 2}).scaled(0.25));
  CHECK(run_binary("lift " + rho.string() + " --mode state --alpha 0 --beta 1 --gamma 1") == kExitError);
  CHECK(run_binary("no-such-command") == kExitError);
}

TEST_CASE("classify report layout") {
  const fs::path w = write_operator("choi.json", w_xyz(1, 1, 0).op);
  const InProcess r = run({"classify", w.string(), "--restarts", "16", "--seed", "5"});
  CHECK(r.code == kExitWitness);
  for (const char* key : {"command", "inputs", "results", "tolerances", "provenance", "status"}) {
    CHECK(r.report.contains(key));
  }
  CHECK(r.report["command"] == "classify");
  CHECK(r.report["results"]["is_witness"] == true);
  CHECK(r.report["results"]["weakly_optimal"] == true);
  CHECK(r.report["inputs"]["config"]["seed"] == 5);
  CHECK(r.report["tolerances"]["tol_zero"] == 1e-7);

  const InProcess again = run({"classify", w.string(), "--restarts", "16", "--seed", "5"});
  CHECK(again.report == r.report);
}

TEST_CASE("seed falls back to the environment") {
  const fs::path w = write_operator("s1.json", sigma1());
  ::setenv("WF_SEED", "42", 1);
  const InProcess r = run({"minprod", w.string(), "--restarts", "4"});
  ::unsetenv("WF_SEED");
  CHECK(r.code == 0);
  CHECK(r.report["inputs"]["config"]["seed"] == 42);
  CHECK(std::abs(r.report["results"]["value"].get<double>() - 0.5) <= 1e-6);
}

TEST_CASE("minprod with --max") {
  const fs::path b = write_operator("bell.json", bell_projector());
  const InProcess r = run({"minprod", b.string(), "--max"});
  CHECK(r.code == 0);
  CHECK(std::abs(r.report["results"]["value"].get<double>() - 0.5) <= 1e-6);
}

TEST_CASE("family round trip") {
  const fs::path out = scratch_dir() / "wxyz.json";
  const InProcess r = run({"family", "--name", "w-xyz", "--param", "1", "--param", "1", "--param", "0", "--out",
                           out.string()});
  CHECK(r.code == 0);
  CHECK(read_matrix_file(out.string()).max_abs_diff(w_xyz(1, 1, 0).op) == 0.0);
  CHECK(run({"family", "--name", "nope"}).code == kExitError);
}

TEST_CASE("lift and decompose commands") {
  const fs::path w = write_operator("lw.json", lift_example_witness());
  const InProcess r = run({"lift", w.string(), "--mode", "witness", "--probe-restarts", "4"});
  CHECK(r.code == 0);
  CHECK(std::abs(r.report["results"]["constant"].get<double>() - 162.0 / 4096.0) <= 1e-9);

  const fs::path wq = write_operator("wq.json", wq_example(1.0, 2.0));
  const InProcess d = run({"decompose", wq.string()});
  CHECK(d.code == 0);
  CHECK(d.report["results"]["decomposable"] == true);
}

TEST_CASE("reproduce a single case") {
  const InProcess r = run({"reproduce", "--case", "sigma1-cmax"});
  CHECK(r.code == 0);
  CHECK(r.report["status"] == "pass");
  CHECK(run({"reproduce", "--case", "missing"}).code == kExitError);
}
