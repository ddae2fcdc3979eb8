#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "pantograph/app.hpp"
#include "pantograph/report.hpp"

namespace fs = std::filesystem;
using namespace pantograph;
using namespace pantograph::app;

namespace {

const std::string kConfigs = PANTOGRAPH_CONFIG_DIR;

class AppTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pantograph_app_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string out(const std::string& sub) const { return (dir_ / sub).string(); }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  static std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
  }

  fs::path dir_;
  std::ostringstream stdout_;
  std::ostringstream stderr_;
};

TEST_F(AppTest, SweepDefaultWritesCsvAndSvg) {
  SweepOptions o;
  o.out_dir = out("a");
  o.ascii = true;
  ASSERT_EQ(run_sweep(o, stdout_, stderr_), kExitOk) << stderr_.str();
  EXPECT_EQ(first_line(dir_ / "a" / "sweep.csv"), kSweepCsvHeader);
  const std::string csv = slurp(dir_ / "a" / "sweep.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 14);
  EXPECT_NE(slurp(dir_ / "a" / "sweep.svg").find("<svg"), std::string::npos);
  EXPECT_NE(stdout_.str().find("flat region"), std::string::npos);
}

TEST_F(AppTest, SweepLosslessIsConstant) {
  SweepOptions o;
  o.out_dir = out("a");
  o.lossless = true;
  ASSERT_EQ(run_sweep(o, stdout_, stderr_), kExitOk);
  std::istringstream csv(slurp(dir_ / "a" / "sweep.csv"));
  std::string line;
  std::getline(csv, line);
  int rows = 0;
  while (std::getline(csv, line)) {
    std::istringstream fields(line);
    std::string h, t, ideal, lossy;
    std::getline(fields, h, ',');
    std::getline(fields, t, ',');
    std::getline(fields, ideal, ',');
    std::getline(fields, lossy, ',');
    EXPECT_EQ(lossy, ideal);
    EXPECT_EQ(lossy, format_number(1.86325));
    ++rows;
  }
  EXPECT_EQ(rows, 13);
}

TEST_F(AppTest, SweepIsByteIdenticalAcrossRuns) {
  SweepOptions o;
  o.config_path = kConfigs + "/default.json";
  o.out_dir = out("1");
  ASSERT_EQ(run_sweep(o, stdout_, stderr_), kExitOk);
  o.out_dir = out("2");
  ASSERT_EQ(run_sweep(o, stdout_, stderr_), kExitOk);
  EXPECT_EQ(slurp(dir_ / "1" / "sweep.csv"), slurp(dir_ / "2" / "sweep.csv"));
  o.out_dir = out("3");
  o.seed = 43;
  ASSERT_EQ(run_sweep(o, stdout_, stderr_), kExitOk);
  EXPECT_NE(slurp(dir_ / "1" / "sweep.csv"), slurp(dir_ / "3" / "sweep.csv"));
}

TEST_F(AppTest, SweepUnreachableHeightIsDomainError) {
  const fs::path cfg = dir_ / "cfg.json";
  fs::create_directories(dir_);
  std::ofstream(cfg) << R"({"sweep": {"heights_mm": [100, 450]}})";
  SweepOptions o;
  o.config_path = cfg.string();
  o.out_dir = out("a");
  EXPECT_EQ(run_sweep(o, stdout_, stderr_), kExitDomain);
  EXPECT_FALSE(fs::exists(dir_ / "a" / "sweep.csv"));
}

TEST_F(AppTest, BadConfigIsConfigError) {
  const fs::path cfg = dir_ / "cfg.json";
  fs::create_directories(dir_);
  std::ofstream(cfg) << "{\n\"pantograph\": {\"l1_cm\": 20}\n}";
  SweepOptions o;
  o.config_path = cfg.string();
  o.out_dir = out("a");
  EXPECT_EQ(run_sweep(o, stdout_, stderr_), kExitConfig);
  EXPECT_NE(stderr_.str().find(":2:"), std::string::npos) << stderr_.str();
  EXPECT_FALSE(fs::exists(dir_ / "a"));
}

TEST_F(AppTest, SimulatePresets) {
  SimulateOptions o;
  o.config_path = kConfigs + "/flat_dwell.json";
  o.out_dir = out("flat");
  ASSERT_EQ(run_simulate(o, stdout_, stderr_), kExitOk) << stderr_.str();
  EXPECT_EQ(first_line(dir_ / "flat" / "timeseries.csv"), kTimeSeriesCsvHeader);
  const auto flat = nlohmann::json::parse(slurp(dir_ / "flat" / "dwell_report.json"));
  EXPECT_TRUE(flat["measurement_achieved"].get<bool>());
  EXPECT_EQ(flat["events"].size(), 1u);

  o.config_path = kConfigs + "/out_of_reach.json";
  o.out_dir = out("far");
  ASSERT_EQ(run_simulate(o, stdout_, stderr_), kExitOk);
  const auto far = nlohmann::json::parse(slurp(dir_ / "far" / "dwell_report.json"));
  EXPECT_TRUE(far["events"].empty());
  EXPECT_FALSE(far["measurement_achieved"].get<bool>());
}

TEST_F(AppTest, SimulateCompare) {
  SimulateOptions o;
  o.config_path = kConfigs + "/compare.json";
  o.out_dir = out("cmp");
  o.compare_spring_probe = true;
  ASSERT_EQ(run_simulate(o, stdout_, stderr_), kExitOk) << stderr_.str();
  EXPECT_TRUE(fs::exists(dir_ / "cmp" / "timeseries_pantograph.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "cmp" / "timeseries_spring_probe.csv"));
  const auto r = nlohmann::json::parse(slurp(dir_ / "cmp" / "dwell_report.json"));
  EXPECT_GE(r["pantograph"]["in_band_fraction"].get<double>(),
            r["spring_probe"]["in_band_fraction"].get<double>());
}

TEST_F(AppTest, SimulateNeedsContactSection) {
  SimulateOptions o;
  o.out_dir = out("x");
  EXPECT_EQ(run_simulate(o, stdout_, stderr_), kExitConfig);
}

TEST_F(AppTest, SimulateIsByteIdenticalAcrossRuns) {
  const fs::path cfg = dir_ / "noisy.json";
  fs::create_directories(dir_);
  std::ofstream(cfg) << R"({"contact": {"surface_height_m": 0.3,
      "heave": {"kind": "sinusoid", "amplitude_m": 0.12, "period_s": 1.5},
      "duration_s": 2, "band_fraction": 0.1}, "rng_seed": 5})";
  SimulateOptions o;
  o.config_path = cfg.string();
  o.out_dir = out("1");
  ASSERT_EQ(run_simulate(o, stdout_, stderr_), kExitOk) << stderr_.str();
  o.out_dir = out("2");
  ASSERT_EQ(run_simulate(o, stdout_, stderr_), kExitOk);
  EXPECT_EQ(slurp(dir_ / "1" / "timeseries.csv"), slurp(dir_ / "2" / "timeseries.csv"));
  EXPECT_EQ(slurp(dir_ / "1" / "dwell_report.json"), slurp(dir_ / "2" / "dwell_report.json"));
}

TEST_F(AppTest, DesignPresets) {
  DesignOptions o;
  o.config_path = kConfigs + "/design_190gf.json";
  o.out_dir = out("ok");
  o.brute_force_check = true;
  ASSERT_EQ(run_design(o, stdout_, stderr_), kExitOk) << stderr_.str();
  const auto ok = nlohmann::json::parse(slurp(dir_ / "ok" / "design_solution.json"));
  EXPECT_TRUE(ok["feasible"].get<bool>());
  EXPECT_NEAR(ok["r_m"].get<double>(), 0.05, 1e-12);
  EXPECT_TRUE(ok["brute_force_check"]["agree"].get<bool>());
  EXPECT_EQ(ok["spec"]["link_min_m"].get<double>(), 0.2);

  o.config_path = kConfigs + "/design_impossible.json";
  o.out_dir = out("no");
  ASSERT_EQ(run_design(o, stdout_, stderr_), kExitOk);
  const auto no = nlohmann::json::parse(slurp(dir_ / "no" / "design_solution.json"));
  EXPECT_FALSE(no["feasible"].get<bool>());
  ASSERT_FALSE(no["violations"].empty());
  EXPECT_EQ(no["violations"][0], "stroke exceeds 2*l1");
}

TEST_F(AppTest, OutputDirectoryPrecedence) {
  const fs::path cfg = dir_ / "cfg.json";
  fs::create_directories(dir_);
  std::ofstream(cfg) << "{\"output_dir\": \"" << out("from_config") << "\"}";
  ::setenv(kOutDirEnv, out("from_env").c_str(), 1);

  SweepOptions o;
  ASSERT_EQ(run_sweep(o, stdout_, stderr_), kExitOk);
  EXPECT_TRUE(fs::exists(dir_ / "from_env" / "sweep.csv"));

  o.config_path = cfg.string();
  ASSERT_EQ(run_sweep(o, stdout_, stderr_), kExitOk);
  EXPECT_TRUE(fs::exists(dir_ / "from_config" / "sweep.csv"));

  o.out_dir = out("from_flag");
  ASSERT_EQ(run_sweep(o, stdout_, stderr_), kExitOk);
  EXPECT_TRUE(fs::exists(dir_ / "from_flag" / "sweep.csv"));
  ::unsetenv(kOutDirEnv);
}

TEST_F(AppTest, VerifyPasses) {
  EXPECT_EQ(run_verify(stdout_, stderr_), kExitOk) << stdout_.str();
  EXPECT_NE(stdout_.str().find("invariants hold"), std::string::npos);
}

}  // namespace
