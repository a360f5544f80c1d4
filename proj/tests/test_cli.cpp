#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qmac/cli.hpp"

using namespace qmac;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "qmac_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config text parsing") {
  const auto kv = cli::parse_config_text("# comment\nstations = 12\nload=1.5 # trailing\n\ntrace-cap = 10\n");
  CHECK(kv.at("stations") == "12");
  CHECK(kv.at("load") == "1.5");
  CHECK(kv.at("trace_cap") == "10");
  CHECK_THROWS_AS(cli::parse_config_text("stations 12\n"), ConfigError);
  CHECK_THROWS_AS(cli::parse_config_text("colour = red\n"), ConfigError);
}

TEST_CASE("load lists") {
  CHECK(cli::parse_load_list("0.5, 1,2") == std::vector<double>{0.5, 1.0, 2.0});
  const auto grid = cli::parse_load_list("0.1:2.0:0.1");
  REQUIRE(grid.size() == 20);
  CHECK(grid[2] == 0.3);
  CHECK(grid.back() == 2.0);
  CHECK(cli::parse_load_list("").empty());
  CHECK_THROWS_AS(cli::parse_load_list("1:0:0.1"), ConfigError);
  CHECK_THROWS_AS(cli::parse_load_list("a,b"), ConfigError);
}

TEST_CASE("run writes JSON with the effective config") {
  const auto path = temp_dir() / "r.json";
  const auto inv = invoke({"run", "--protocol", "temporal-ordering", "--stations", "8", "--load", "1.5", "--seed", "42",
                           "--slots", "20000", "--format", "json", "--out", path.string()});
  REQUIRE(inv.code == 0);
  const auto j = nlohmann::json::parse(slurp(path));
  CHECK(j["tool"] == "qmac");
  CHECK(j["version"] == std::string(cli::kVersion));
  CHECK(j["config"]["seed"] == "42");
  CHECK(j["config"]["stations"] == "8");
  CHECK(j["result"]["normalized_throughput_T"].get<double>() >= 0.99);
  CHECK(j["result"]["slot_outcomes_summary"]["collision"] == 0);
}

TEST_CASE("run CSV to stdout and byte-identical repeats") {
  const std::vector<std::string> args{"run", "--protocol", "qubit-distribution", "--stations", "4",
                                      "--load", "0.7", "--slots", "4000", "--out", "-"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("protocol,n,load,replication,seed,S,T,collisions\nqubit-distribution,4,0.7,0,1,") !=
        std::string::npos);
  CHECK(a.out.rfind("# qmac 1.0.0\n# config: subcommand=run protocol=qubit-distribution", 0) == 0);
}

TEST_CASE("config file with flag overrides") {
  const auto cfg = temp_dir() / "cfg.txt";
  std::ofstream(cfg) << "protocol = aloha\nstations = 3\nload = 2.0\nslots = 1000\nseed = 5\n";
  const auto inv = invoke({"run", "--config", cfg.string(), "--load", "1.0", "--out", "-"});
  REQUIRE(inv.code == 0);
  CHECK(inv.out.find("protocol=aloha stations=3 load=1 ") != std::string::npos);
  CHECK(inv.out.find("\naloha,3,1,0,5,") != std::string::npos);
}

TEST_CASE("configuration errors exit with 2 and name the field") {
  auto a = invoke({"run", "--stations", "0"});
  CHECK(a.code == 2);
  CHECK(a.err.find("stations") != std::string::npos);
  a = invoke({"run", "--protocol", "qubit-distribution", "--stations", "5"});
  CHECK(a.code == 2);
  CHECK(a.err.find("stations") != std::string::npos);
  a = invoke({"run", "--protocol", "csma"});
  CHECK(a.code == 2);
  CHECK(a.err.find("protocol") != std::string::npos);
  a = invoke({"sweep", "--loads", ""});
  CHECK(a.code == 2);
  CHECK(a.err.find("loads") != std::string::npos);
  a = invoke({"sweep"});
  CHECK(a.code == 2);
  a = invoke({"run", "--format", "xml"});
  CHECK(a.code == 2);
  a = invoke({"run", "--config", (temp_dir() / "missing.txt").string()});
  CHECK(a.code == 2);
  a = invoke({"bogus"});
  CHECK(a.code == 2);
  a = invoke({"verify", "--check", "nope"});
  CHECK(a.code == 2);
}

TEST_CASE("runtime failures exit with 1") {
  const auto a = invoke({"run", "--slots", "10", "--out", "/proc/qmac-cannot-write/r.csv"});
  CHECK(a.code == 1);
}

TEST_CASE("verify reports") {
  auto a = invoke({"verify", "--check", "qd4-collisions"});
  CHECK(a.code == 0);
  CHECK(a.out.find("PASS qd4-collisions: 3 of 81 outcomes collide") != std::string::npos);
  a = invoke({"verify", "--check", "lehmer", "--n", "5"});
  CHECK(a.code == 0);
  CHECK(a.out.find("bijection over 120 ranks") != std::string::npos);
  a = invoke({"verify", "--check", "qd3-table"});
  CHECK(a.out.find("8/8 rows matched") != std::string::npos);
  a = invoke({"verify"});
  CHECK(a.code == 0);
  CHECK(a.out.find("FAIL") == std::string::npos);
}

TEST_CASE("sweep CSV schema and ordering") {
  const auto inv = invoke({"sweep", "--protocols", "temporal-ordering,aloha", "--loads", "0.5,1.0", "--slots", "2000",
                           "--replications", "2", "--out", "-"});
  REQUIRE(inv.code == 0);
  std::istringstream lines(inv.out);
  std::vector<std::string> rows;
  for (std::string l; std::getline(lines, l);) {
    if (!l.empty() && l[0] != '#') rows.push_back(l);
  }
  REQUIRE(rows.size() == 9);
  CHECK(rows[0] == "protocol,n,load,replication,seed,S,T,collisions");
  CHECK(rows[1].rfind("temporal-ordering,8,0.5,0,", 0) == 0);
  CHECK(rows[2].rfind("temporal-ordering,8,0.5,1,", 0) == 0);
  CHECK(rows[4].rfind("temporal-ordering,8,1,1,", 0) == 0);
  CHECK(rows[5].rfind("aloha,8,0.5,0,", 0) == 0);
}

TEST_CASE("fairness CSV sums to one per replication") {
  const auto inv = invoke({"fairness", "--stations", "12", "--slots", "12000", "--replications", "3", "--out", "-"});
  REQUIRE(inv.code == 0);
  std::istringstream lines(inv.out);
  std::vector<double> sums(3, 0.0);
  int rows = 0;
  for (std::string l; std::getline(lines, l);) {
    if (l.empty() || l[0] == '#' || l.rfind("n,", 0) == 0) continue;
    std::stringstream ss(l);
    std::string n, station, rep, ratio;
    std::getline(ss, n, ',');
    std::getline(ss, station, ',');
    std::getline(ss, rep, ',');
    std::getline(ss, ratio, ',');
    sums[static_cast<std::size_t>(std::stoi(rep))] += std::stod(ratio);
    CHECK(std::abs(std::stod(ratio) - 1.0 / 12) < 0.02);
    ++rows;
  }
  CHECK(rows == 36);
  for (double s : sums) CHECK(s == doctest::Approx(1.0));
}

TEST_CASE("output directory from the environment") {
  const auto dir = temp_dir() / "envout";
  std::filesystem::remove_all(dir);
  ::setenv(cli::kOutputDirEnv, dir.string().c_str(), 1);
  const auto inv = invoke({"run", "--slots", "100", "--format", "json"});
  ::unsetenv(cli::kOutputDirEnv);
  CHECK(inv.code == 0);
  CHECK(std::filesystem::exists(dir / "run.json"));
}
