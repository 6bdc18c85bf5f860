#include "doctest.h"
#include "json.hpp"
#include "support/process.hpp"

#include <cmath>
#include <filesystem>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = WVU_CLI_PATH;

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("wvu_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

proc::Result cli(const std::string& args) { return proc::run(kCli + " " + args); }

const char* kIdentity = R"({"A": [[1, 0], [0, 1]], "B": [[1, 0], [0, 1]], "psi": [0.6, 0.8]})";

const char* kSpin1 = R"({
  "A": [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
  "B": [[0, {"re": 0, "im": -1}, 0], [{"re": 0, "im": 1}, 0, 0], [0, 0, 1]],
  "psi": [1, 0, 1]
})";

}  // namespace

TEST_CASE("report on the spin-1 problem attains the tightened bound") {
  Scratch s;
  proc::spit(s.file("spin1.json"), kSpin1);
  const auto r = cli("report " + s.file("spin1.json"));
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["gap_tight_AB"].get<double>()) < 1e-9);
  CHECK(j["var_A"].get<double>() == 0.75);
  CHECK(r.out.find("\"var_A\"") < r.out.find("\"var_B\""));
}

TEST_CASE("report on A = B = I has all gaps zero") {
  Scratch s;
  proc::spit(s.file("id.json"), kIdentity);
  const auto r = cli("report " + s.file("id.json"));
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"gap_schrodinger", "gap_tight_AB", "gap_tight_max"})
    CHECK(j[key].get<double>() == 0.0);
}

TEST_CASE("usage, parse and I/O errors exit with 2") {
  Scratch s;
  proc::spit(s.file("bad.json"), "{\"A\": [[1, 0]");
  CHECK(cli("report " + s.file("bad.json")).exit_code == 2);
  proc::spit(s.file("nh.json"), R"({"A": [[0, 1], [0, 0]], "B": [[1, 0], [0, 1]], "psi": [1, 0]})");
  CHECK(cli("report " + s.file("nh.json")).exit_code == 2);
  CHECK(cli("report " + s.file("missing.json")).exit_code == 2);
  CHECK(cli("sweep-spin32 --steps 0").exit_code == 2);
  CHECK(cli("sweep-spin1 --res 1").exit_code == 2);
  CHECK(cli("sweep-spin32 --steps 5 --out /nonexistent-dir/x.csv").exit_code == 2);
  CHECK(cli("gaussian --mu 0").exit_code == 2);
  CHECK(cli("gaussian --x-min -1 --x-max 1").exit_code == 2);
  CHECK(cli("random-verify --modes sideways").exit_code == 2);
  CHECK(cli("no-such-command").exit_code == 2);
  CHECK(cli("").exit_code == 2);
  CHECK(cli("--help").exit_code == 0);
}

TEST_CASE("sweeps write CSV files") {
  Scratch s;
  REQUIRE(cli("sweep-spin32 --tmin -3 --tmax 3 --steps 601 --out " + s.file("spin32.csv")).exit_code ==
          0);
  const auto text = proc::slurp(s.file("spin32.csv"));
  CHECK(std::count(text.begin(), text.end(), '\n') == 602);
  CHECK(text.rfind("t,lhs,", 0) == 0);

  const auto piped = cli("sweep-spin32 --tmin -3 --tmax 3 --steps 601");
  CHECK(piped.out == text);

  REQUIRE(cli("sweep-spin1 --res 20 --theta 0.5 --out " + s.file("spin1.csv")).exit_code == 0);
  const auto spin1_text = proc::slurp(s.file("spin1.csv"));
  CHECK(std::count(spin1_text.begin(), spin1_text.end(), '\n') == 401);
}

TEST_CASE("random-verify passes and reports every invariant") {
  const auto r = cli("random-verify --seed 42 --dims 2 --samples 1000 --modes none");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("dim2_extra_term_zero") != std::string::npos);
  CHECK(r.out.find("result: PASS") != std::string::npos);
}

TEST_CASE("random-verify exits with 1 and dumps a replayable reproducer") {
  Scratch s;
  const auto r = cli("random-verify --seed 7 --dims 3 --samples 5 --tol-zero 10 --repro " +
                     s.file("repro.json"));
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("result: FAIL") != std::string::npos);
  const auto j = nlohmann::json::parse(proc::slurp(s.file("repro.json")));
  CHECK(j["reproducer"]["seed"].get<int>() == 7);
  CHECK(j["reproducer"]["index"].get<int>() == 0);
  // the dumped problem is a valid input to report
  CHECK(cli("report " + s.file("repro.json")).exit_code == 0);
}

TEST_CASE("gaussian defaults") {
  const auto r = cli("gaussian");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["gap_over_lhs"].get<double>() < 1e-3);
  CHECK(j["discord_p_given_x"].get<double>() < 1e-8);

  const auto cov = nlohmann::json::parse(cli("gaussian --lambda 2 --mu 1").out);
  CHECK(cov["covariance_term"].get<double>() == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("every command is byte-for-byte deterministic") {
  Scratch s;
  proc::spit(s.file("spin1.json"), kSpin1);
  for (const std::string args :
       {"report " + s.file("spin1.json"), std::string("sweep-spin1 --res 30 --theta 0.25"),
        std::string("sweep-spin32 --steps 101"),
        std::string("random-verify --seed 3 --dims 3,4 --samples 200"),
        std::string("gaussian --lambda 1 --mu 0.5 --mean-p 0.2")}) {
    const auto first = cli(args);
    const auto second = proc::run("OMP_NUM_THREADS=3 " + kCli + " " + args);
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK_FALSE(first.out.empty());
  }
}
