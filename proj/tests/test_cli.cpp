#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string path(const std::string& name) { return std::string(SATGEOM_TEST_DIR) + "/" + name; }

Run run(const std::string& args, const std::string& env = "") {
  const std::string out = path("cli_out.txt"), err = path("cli_err.txt");
  const std::string cmd = env + " " + SATGEOM_CLI + " " + args + " >" + out + " 2>" + err;
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

void write(const std::string& name, const std::string& text) { std::ofstream(path(name)) << text; }

}  // namespace

TEST_CASE("construct reports the sample size and bound") {
  const auto r = run("construct --q 64 --c 1 --seed 7 --format json");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["size"] == 34);
  CHECK(j["w"] == 33);
  CHECK(j["verified"] == true);
  CHECK(j["bound"].get<double>() == doctest::Approx(34.9445).epsilon(1e-4));
  CHECK(r.err.find("seed 7") != std::string::npos);
  CHECK(run("construct --q 64 --c 1 --seed 7 --format json").out == r.out);
}

TEST_CASE("threshold command") {
  const auto r = run("threshold --mu 2 --d 1.2 --qmax 512 --format json");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["q_star"] == 97);
  CHECK(j["last_failing"] == 89);
  CHECK(run("threshold --mu 2 --d 1.2 --qmax 512 --format json --jobs 3").out == r.out);
}

TEST_CASE("verify a line") {
  write("line.pts", "geometry PG(2,2)\n0 1 2\n");
  const auto r = run("verify --q 2 --set-file " + path("line.pts") + " --format json");
  CHECK(r.code == 1);
  const auto j = json::parse(r.out);
  CHECK(j["saturating"] == false);
  CHECK(j["witness"] == 3);
}

TEST_CASE("constructed sets re-verify from file") {
  const auto set = path("c.pts");
  REQUIRE(run("construct --q 49 --mu 2 --seed 3 --set-out " + set).code == 0);
  CHECK(run("verify --q 49 --mu 2 --set-file " + set).code == 0);
  CHECK(run("verify --q 49 --mu 50 --set-file " + set).code == 1);
  // The same indices interpreted in another plane are rejected.
  CHECK(run("verify --q 64 --set-file " + set).code == 2);
}

TEST_CASE("errors map to exit codes and JSON") {
  auto r = run("construct --q 6");
  CHECK(r.code == 2);
  const auto j = json::parse(r.err);
  CHECK(j["error"] == "NotPrime");
  CHECK(run("construct --q 89 --mu 2 --direct").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("threshold --mu 2").code == 2);
  r = run("oracle pi --q 3 --w 2", "SATGEOM_BUDGET=5");
  CHECK(r.code == 3);
  CHECK(json::parse(r.err)["error"] == "BudgetExceeded");
  CHECK(run("oracle pi --q 3 --w 2").code == 0);
  CHECK(run("bounds eval --q 97 --mu 1 --N 8 --format json").code == 0);
}

TEST_CASE("monte carlo is seed-determined") {
  const auto a = run("mc --q 32 --c 1.2 --trials 50 --seed 11 --format json");
  const auto b = run("mc --q 32 --c 1.2 --trials 50 --seed 11 --format json --jobs 2");
  REQUIRE(a.code == 0);
  CHECK(json::parse(a.out) == json::parse(b.out));
  CHECK(a.err.find("seed 11") != std::string::npos);
  CHECK(run("mc --q 4 --c 1 --trials 5 --seed 1").code == 2);
}

TEST_CASE("bounds output is stable") {
  const auto a = run("bounds eval --q 7 --w 3 --k 2 --c 1 --mu 2 --format json");
  REQUIRE(a.code == 0);
  const auto j = json::parse(a.out);
  CHECK(j["values"]["pi_exact"]["exact"] == "2401/5643");
  CHECK(run("bounds eval --q 7 --w 3 --k 2 --c 1 --mu 2 --format json").out == a.out);
  const auto t = run("bounds table --qmin 79 --qmax 83 --mu 1,2 --N 2,6");
  REQUIRE(t.code == 0);
  CHECK(t.out.rfind("q,mu,N,bound,valid,prior_bound,improves\n", 0) == 0);
  CHECK(run("bounds table --qmin 79 --qmax 83 --mu 1,2 --N 2,6").out == t.out);
}

TEST_CASE("plane files") {
  const auto file = path("pg3.plane");
  REQUIRE(run("plane gen --q 3 --out " + file).code == 0);
  CHECK(run("plane check --plane-file " + file).code == 0);
  write("bad.plane", "q 2 points 7 lines 7\n0 1 2\n0 1 3\n0 4 5\n1 4 6\n2 3 6\n2 4 5\n3 5 6\n");
  const auto r = run("plane check --plane-file " + path("bad.plane") + " --format json");
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["ok"] == false);
  write("fano.pts", "geometry -\n3 4 5 6\n");
  write("fano.plane", "q 2 points 7 lines 7\n0 1 2\n0 3 4\n0 5 6\n1 3 5\n1 4 6\n2 3 6\n2 4 5\n");
  CHECK(run("verify --plane-file " + path("fano.plane") + " --set-file " + path("fano.pts") +
            " --mu 2").code == 0);
  CHECK(run("code export --plane-file " + path("fano.plane") + " --set-file " +
            path("fano.pts")).code == 2);
}

TEST_CASE("code export, radius and multiple coverage") {
  write("quad.pts", "geometry PG(2,2)\n3 4 5 6\n");
  const auto matrix = path("quad.mat");
  REQUIRE(run("code export --q 2 --set-file " + path("quad.pts") + " --out " + matrix).code == 0);
  CHECK(slurp(matrix).rfind("2 3 4\n", 0) == 0);
  const auto r = run("oracle radius --matrix-file " + matrix + " --format json");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["radius"] == 2);
  CHECK(run("code check --matrix-file " + matrix + " --mu 2").code == 0);
  CHECK(run("code check --matrix-file " + matrix + " --mu 3 --method geometric").code == 1);
}

TEST_CASE("oracle commands") {
  auto r = run("oracle t --q 2 --w 2 --format json");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["histogram"]["0"] == 8);
  CHECK(j["histogram"]["1"] == 12);
  r = run("oracle min-sat --q 2 --format json");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["size"] == 4);
}
