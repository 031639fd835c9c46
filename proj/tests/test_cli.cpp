// Exit-code and artifact contracts of the command-line front end. The
// binary path arrives in the SPECAV_CLI environment variable.

#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "specav/json_io.hpp"

using namespace specav;

namespace {

std::string cli_path() {
  const char* env = std::getenv("SPECAV_CLI");
  REQUIRE_MESSAGE(env != nullptr, "SPECAV_CLI must point at the binary");
  return env;
}

int run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing output file: " << path);
  return Json::parse(in);
}

}  // namespace

TEST_CASE("orthant averages are direction dependent with limits 1 and 0") {
  CHECK(run("average --symbol orthant --d 2 --dirs diag,antidiag --growth sqrt "
            "--t-max 1e4 --out-prefix cli_orthant") == 0);
  const Json j = read_json("cli_orthant.json");
  CHECK(j.at("direction_test").at("verdict") == "direction_dependent");
  const auto& estimates = j.at("direction_test").at("estimates");
  CHECK(std::abs(estimates.at(0).at("limit").at("re").get<double>() - 1.0) < 1e-12);
  CHECK(std::abs(estimates.at(1).at("limit").at("re").get<double>()) < 1e-12);
  // per-sample CSV and the gnuplot script come along
  std::ifstream csv("cli_orthant.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "direction,t,r,count,re_avg,im_avg");
  CHECK(std::ifstream("cli_orthant.gp").good());
  CHECK(std::ifstream("cli_orthant.config.json").good());
}

TEST_CASE("the squared counterexample passes --expect-consistent") {
  CHECK(run("average --symbol counterexample-sqmod --d 2 --dirs diag,antidiag,e1 "
            "--t-max 1e4 --expect-consistent --out-prefix cli_sqmod") == 0);
  const Json j = read_json("cli_sqmod.json");
  CHECK(j.at("direction_test").at("verdict") == "consistent");
}

TEST_CASE("--expect-consistent turns a dependent verdict into exit 1") {
  CHECK(run("average --symbol orthant --d 2 --dirs diag,antidiag --t-max 1e4 "
            "--expect-consistent --out-prefix cli_expect") == 1);
}

TEST_CASE("measure theorem check reports small relative error") {
  const AtomicMeasure mu(2, {Atom{(Eigen::VectorXd(2) << 1.0, 2.0).finished(),
                                  Complex(1.0, 0.0)},
                             Atom{(Eigen::VectorXd(2) << 3.0, 1.0).finished(),
                                  Complex(0.0, 0.5)}});
  std::ofstream("cli_atoms.json") << measure_to_json(mu).dump(2);
  CHECK(run("average --measure cli_atoms.json --theorem-check --dirs e1,e2 "
            "--t-max 1e4 --out-prefix cli_theorem") == 0);
  const Json j = read_json("cli_theorem.json");
  CHECK(j.at("worst_rel_error").get<double>() < 0.05);
}

TEST_CASE("unknown symbols and bad arguments exit 1") {
  CHECK(run("average --symbol bogus --out-prefix cli_bogus") == 1);
  CHECK(run("average --symbol orthant --dirs e9 --out-prefix cli_badsub") == 1);
}

TEST_CASE("riesz demo emits certificates above the floor") {
  CHECK(run("riesz-demo --n-list 4,6 --brute-check --grid 64 "
            "--out-prefix cli_riesz") == 0);
  const Json j = read_json("cli_riesz.json");
  for (const auto& row : j.at("floor_table")) CHECK(row.at("above_floor") == true);
  for (const auto& runj : j.at("runs")) {
    CHECK(runj.at("certificate").at("pass") == true);
    CHECK(runj.at("expansion_route_ok") == true);
  }
}

TEST_CASE("riesz demo refuses N beyond the enumeration guard") {
  CHECK(run("riesz-demo --n-list 20 --out-prefix cli_riesz20") == 1);
}

TEST_CASE("projection demo: curl is obstructed, identity cannot conclude") {
  CHECK(run("projection-demo --matrix curl2 --t-list 500,1000 "
            "--out-prefix cli_curl") == 0);
  CHECK(read_json("cli_curl.json").at("verdict") == "obstructed");
  CHECK(run("projection-demo --matrix identity --t-list 500,1000 "
            "--out-prefix cli_identity") == 2);
  CHECK(read_json("cli_identity.json").at("verdict") == "cannot_conclude");
}

TEST_CASE("transfer check emits the documented report fields") {
  CHECK(run("transfer-check --symbol orthant --dir e1 --t-list 1e3 "
            "--out-prefix cli_transfer") == 0);
  const Json j = read_json("cli_transfer.json");
  const auto& rep = j.at("reports").at(0);
  for (const char* key : {"c1", "c", "lattice_avg", "continuous_avg", "residual", "t"})
    CHECK(rep.contains(key));
  CHECK(rep.at("residual").get<double>() < 0.02);
}
