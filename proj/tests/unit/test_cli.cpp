#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "scenarios.hpp"

namespace medea {
namespace {

namespace fs = std::filesystem;

const char* kSmall =
    "[scenario]\n"
    "horizon = 24\n"
    "focus_zone = AT\n"
    "[zone AT]\n"
    "demand_el = 5\n"
    "reserve_load_factor = 0\n"
    "reserve_intermittent_factor = 0\n"
    "co2_price = 20\n"
    "renewable_target = 10000000\n"
    "[fuel gas]\n"
    "co2_intensity = 0.2\n"
    "price = 20\n"
    "[dispatchable AT.gas]\n"
    "fuels = gas\n"
    "capacity = 6\n"
    "eta_el = 0.5\n"
    "[intermittent AT.wind_on]\n"
    "capacity = 1\n"
    "capex_per_kw = 1040\n"
    "lifetime = 30\n"
    "expandable = true\n"
    "profile = 0.3\n";

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("medea_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("MEDEA_SOLVER");
  }
  void TearDown() override {
    unsetenv("MEDEA_SOLVER");
    fs::remove_all(dir_);
  }

  fs::path write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "medea");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return cli::run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}), cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}), cli::kUsage);
  EXPECT_EQ(run({"--help"}), cli::kOk);
  EXPECT_EQ(run({"validate", (dir_ / "missing.ini").string()}), cli::kUsage);
  EXPECT_NE(err_.str().find("not found"), std::string::npos);
}

TEST_F(Cli, ValidateReportsLinesAndViolations) {
  EXPECT_EQ(run({"validate", testing::toy_config_path().string()}), cli::kOk);
  EXPECT_NE(out_.str().find(": ok (hash "), std::string::npos) << out_.str();

  const auto broken = write("broken.ini", std::string(kSmall) + "colour = blue\n");
  EXPECT_EQ(run({"validate", broken.string()}), cli::kValidation);
  EXPECT_NE(err_.str().find(":23"), std::string::npos) << err_.str();

  std::string bad_profile = kSmall;
  bad_profile.replace(bad_profile.find("profile = 0.3"), 13, "profile = 1.5");
  EXPECT_EQ(run({"validate", write("bad.ini", bad_profile).string()}), cli::kValidation);
  EXPECT_NE(err_.str().find("profile.range"), std::string::npos) << err_.str();
}

TEST_F(Cli, SolveWritesOutputs) {
  const auto cfg = write("small.ini", kSmall);
  const auto out = dir_ / "out";
  ASSERT_EQ(run({"solve", cfg.string(), "--out", out.string(), "--set", "co2_price=30"}), cli::kOk) << err_.str();
  EXPECT_EQ(out_.str().rfind("objective=", 0), 0u) << out_.str();
  EXPECT_NE(out_.str().find(" wind_added_gw="), std::string::npos);
  for (const char* f : {"cost_components.csv", "capacities.csv", "dispatch_monthly.csv", "prices.csv", "summary.json",
                        "manifest.json"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  std::ifstream m(out / "manifest.json");
  std::stringstream ms;
  ms << m.rdbuf();
  EXPECT_NE(ms.str().find("\"co2_price\": \"30\""), std::string::npos) << ms.str();
  EXPECT_NE(ms.str().find("\"scenario_hash\""), std::string::npos);
}

TEST_F(Cli, SolveFailureModes) {
  const auto cfg = write("small.ini", kSmall);
  EXPECT_EQ(run({"solve", cfg.string(), "--out", (dir_ / "o").string(), "--set", "co2_price"}), cli::kUsage);
  EXPECT_EQ(run({"solve", cfg.string(), "--out", (dir_ / "o").string(), "--set", "nonsense=1"}), cli::kUsage);
  EXPECT_EQ(run({"solve", cfg.string(), "--out", (dir_ / "o").string(), "--set", "tech.AT.wind_on.expandable=false",
                 "--set", "zone.AT.renewable_target=40000000"}),
            cli::kSolver);
  EXPECT_NE(err_.str().find("res_target.AT"), std::string::npos) << err_.str();
  setenv("MEDEA_SOLVER", "cplex", 1);
  EXPECT_EQ(run({"solve", cfg.string(), "--out", (dir_ / "o").string()}), cli::kUsage);
}

TEST_F(Cli, InterchangeModeWritesModelOnly) {
  const auto cfg = write("small.ini", kSmall);
  setenv("MEDEA_SOLVER", "interchange", 1);
  const auto out = dir_ / "x";
  ASSERT_EQ(run({"solve", cfg.string(), "--out", out.string()}), cli::kOk) << err_.str();
  EXPECT_TRUE(fs::exists(out / "model.mps"));
  EXPECT_TRUE(fs::exists(out / "model.names.csv"));
  EXPECT_TRUE(fs::exists(out / "manifest.json"));
  EXPECT_FALSE(fs::exists(out / "summary.json"));
  EXPECT_EQ(run({"sweep", cfg.string(), "--out", out.string()}), cli::kUsage);
}

TEST_F(Cli, SweepAndGrid) {
  const auto cfg = write("small.ini", kSmall);
  EXPECT_EQ(run({"sweep", cfg.string(), "--step", "0"}), cli::kUsage);
  EXPECT_EQ(run({"sweep", cfg.string(), "--jobs", "0"}), cli::kUsage);
  EXPECT_EQ(run({"sweep", cfg.string(), "--grid", "co2=1,x"}), cli::kUsage);
  EXPECT_EQ(run({"sweep", cfg.string(), "--grid", "wind=1"}), cli::kUsage);

  const auto out = dir_ / "sweep";
  ASSERT_EQ(run({"sweep", cfg.string(), "--out", out.string(), "--step", "1"}), cli::kOk) << err_.str();
  EXPECT_NE(out_.str().find(" points, "), std::string::npos) << out_.str();
  EXPECT_TRUE(fs::exists(out / "sweep.csv"));
  EXPECT_TRUE(fs::exists(out / "opportunity_cost.csv"));

  const auto grid = dir_ / "grid";
  ASSERT_EQ(run({"sweep", cfg.string(), "--out", grid.string(), "--step", "5", "--grid", "co2=0,100", "--jobs", "2"}),
            cli::kOk)
      << err_.str();
  EXPECT_EQ(out_.str(), "2 cells, 2 succeeded\n");
  EXPECT_TRUE(fs::exists(grid / "grid.csv"));
  EXPECT_TRUE(fs::exists(grid / "cell_001" / "sweep.csv"));
}

}  // namespace
}  // namespace medea
