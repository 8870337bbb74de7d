#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "glv/io.hpp"

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return std::getenv("GLVECON_BIN"); }

int run_cli(const std::string& args) {
  const std::string command = std::string(cli_path()) + " " + args + " 2>/dev/null";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("glv_cli_" + tag + "_" +
                                                     std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli: simulate writes deterministic outputs for a fixed seed") {
  if (cli_path() == nullptr) {
    SKIP("GLVECON_BIN not set");
  }
  const fs::path dir_a = fresh_dir("sim_a");
  const fs::path dir_b = fresh_dir("sim_b");
  const std::string common = "simulate --model 1a --seed 42 --agents 400 --iterations 300";
  REQUIRE(run_cli(common + " --out-dir " + dir_a.string()) == 0);
  REQUIRE(run_cli(common + " --out-dir " + dir_b.string()) == 0);
  for (const char* name : {"wealth.csv", "metrics.json", "aggregates.csv"}) {
    CHECK(fs::exists(dir_a / name));
    CHECK(slurp(dir_a / name) == slurp(dir_b / name));
  }
  CHECK(slurp(dir_a / "wealth.csv").rfind("rank,wealth,income\n", 0) == 0);
}

TEST_CASE("cli: policy runs report the policy block and wealth gini") {
  if (cli_path() == nullptr) {
    SKIP("GLVECON_BIN not set");
  }
  const fs::path dir = fresh_dir("policy");
  REQUIRE(run_cli("simulate --model 1d --seed 7 --agents 400 --iterations 400 "
                  "--policy compulsory-saving --threshold 0.9 --cut 0.2 --out-dir " +
                  dir.string()) == 0);
  const auto doc = nlohmann::json::parse(slurp(dir / "metrics.json"));
  CHECK(doc.contains("policy"));
  CHECK(doc["policy"]["wealth_threshold_frac"] == 0.9);
  CHECK(doc["metrics"].contains("gini_wealth"));
  CHECK(doc["metrics"]["gini_wealth"].get<double>() > 0.0);
}

TEST_CASE("cli: toy-scale run has metrics but no tail exponent") {
  if (cli_path() == nullptr) {
    SKIP("GLVECON_BIN not set");
  }
  const fs::path dir = fresh_dir("toy");
  REQUIRE(run_cli("simulate --model 1c --seed 3 --agents 50 --iterations 10 --out-dir " +
                  dir.string()) == 0);
  const auto doc = nlohmann::json::parse(slurp(dir / "metrics.json"));
  CHECK(doc["metrics"]["gini_wealth"].is_number());
  CHECK(doc["metrics"]["alpha_wealth"].is_null());
}

TEST_CASE("cli: config file values are overridden by flags and unknown keys fail") {
  if (cli_path() == nullptr) {
    SKIP("GLVECON_BIN not set");
  }
  const fs::path dir = fresh_dir("config");
  const fs::path conf = dir / "run.conf";
  glv::write_file_atomic(conf,
                         "model = 1c\nseed = 11\nagents = 60\niterations = 12\nout_dir = " +
                             (dir / "from_conf").string() + "\n");
  REQUIRE(run_cli("simulate --config " + conf.string() + " --agents 80") == 0);
  const auto doc = nlohmann::json::parse(slurp(dir / "from_conf" / "metrics.json"));
  CHECK(doc["agents"] == 80);   // flag wins
  CHECK(doc["seed"] == 11);     // config fills the rest
  CHECK(doc["iterations"] == 12);

  const fs::path bad = dir / "bad.conf";
  glv::write_file_atomic(bad, "seed = 1\nmystery_knob = 3\n");
  CHECK(run_cli("simulate --config " + bad.string()) == 2);
}

TEST_CASE("cli: missing seed and bad flags exit with the config code") {
  if (cli_path() == nullptr) {
    SKIP("GLVECON_BIN not set");
  }
  CHECK(run_cli("simulate --model 1a") == 2);
  CHECK(run_cli("simulate --model nope --seed 1") == 2);
  CHECK(run_cli("sweep --base 1c") == 2);
  CHECK(run_cli("definitely-not-a-command") == 2);
}

TEST_CASE("cli: sweep emits the exact table header") {
  if (cli_path() == nullptr) {
    SKIP("GLVECON_BIN not set");
  }
  const fs::path dir = fresh_dir("sweep");
  const fs::path out = dir / "table.csv";
  REQUIRE(run_cli("sweep --base 1c --rho 0:0.4:0.2 --replicates 2 --seed 5 --agents 200 "
                  "--iterations 200 --out " +
                  out.string()) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("rho,v,seed_count,gini_wealth,gini_income,decile_wealth,decile_income,"
                  "poverty_wealth,poverty_income,alpha_wealth,alpha_defined\n",
                  0) == 0);
  // three rho values -> header plus three rows
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("cli: metrics on an emitted wealth CSV matches the metrics JSON") {
  if (cli_path() == nullptr) {
    SKIP("GLVECON_BIN not set");
  }
  const fs::path dir = fresh_dir("roundtrip");
  REQUIRE(run_cli("simulate --model 1c --seed 19 --agents 500 --iterations 300 --out-dir " +
                  dir.string()) == 0);
  const fs::path json_out = dir / "recomputed.json";
  REQUIRE(run_cli("metrics --input " + (dir / "wealth.csv").string() + " --out " +
                  json_out.string()) == 0);
  const auto sim_doc = nlohmann::json::parse(slurp(dir / "metrics.json"));
  const auto metric_doc = nlohmann::json::parse(slurp(json_out));
  CHECK(std::fabs(metric_doc["gini"].get<double>() -
                  sim_doc["metrics"]["gini_wealth"].get<double>()) < 1e-9);
  CHECK(std::fabs(metric_doc["decile_ratio"].get<double>() -
                  sim_doc["metrics"]["decile_wealth"].get<double>()) < 1e-9);
}

TEST_CASE("cli: fit reports the GLV parameters as JSON") {
  if (cli_path() == nullptr) {
    SKIP("GLVECON_BIN not set");
  }
  const fs::path dir = fresh_dir("fit");
  // histogram taken from a simulated wealth distribution
  REQUIRE(run_cli("simulate --model 1a --seed 4 --agents 2000 --iterations 1500 --out-dir " +
                  dir.string()) == 0);
  const auto wealth = glv::read_csv_column(dir / "wealth.csv", "wealth");
  const glv::Histogram hist = glv::histogram(wealth, 60);
  glv::write_file_atomic(dir / "hist.csv", glv::histogram_csv(hist));

  const fs::path out = dir / "fit.json";
  const int code = run_cli("fit --family glv --input " + (dir / "hist.csv").string() +
                           " --out " + out.string());
  REQUIRE((code == 0 || code == 4));
  const auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["family"] == "glv");
  CHECK(doc.contains("alpha"));
  CHECK(doc.contains("L"));
  CHECK(doc.contains("K"));
  CHECK(doc.contains("reduced_chi2"));
}

TEST_CASE("cli: lv trajectories conserve the orbit invariant") {
  if (cli_path() == nullptr) {
    SKIP("GLVECON_BIN not set");
  }
  const fs::path dir = fresh_dir("lv");
  const fs::path out = dir / "traj.csv";
  REQUIRE(run_cli("lv --a 1 --c 1 --alpha 1 --gamma 1 --x0 2 --y0 1 --dt 0.001 --steps 20000 "
                  "--out " +
                  out.string()) == 0);
  const auto x = glv::read_csv_column(out, "x");
  const auto y = glv::read_csv_column(out, "y");
  REQUIRE(x.size() == 20001);
  const auto invariant = [](double px, double py) {
    return px - std::log(px) + py - std::log(py);
  };
  const double v0 = invariant(x.front(), y.front());
  double drift = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    drift = std::max(drift, std::fabs(invariant(x[i], y[i]) - v0) / v0);
  }
  CHECK(drift < 1e-6);
}

TEST_CASE("cli: city emits final populations and a trajectory") {
  if (cli_path() == nullptr) {
    SKIP("GLVECON_BIN not set");
  }
  const fs::path dir = fresh_dir("city");
  REQUIRE(run_cli("city --cities 300 --steps 200 --seed 8 --out " + (dir / "pops.csv").string() +
                  " --traj " + (dir / "traj.csv").string()) == 0);
  const auto pops = glv::read_csv_column(dir / "pops.csv", "population");
  CHECK(pops.size() == 300);
  for (double p : pops) CHECK(p > 0.0);
  const auto means = glv::read_csv_column(dir / "traj.csv", "mean_pop");
  CHECK(means.size() == 200);
}
