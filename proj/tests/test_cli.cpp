#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "experiment_config.hpp"
#include "relaxssp/relaxssp.h"

using namespace relaxssp::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("relaxssp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  ExperimentConfig config(const std::string& command) {
    ExperimentConfig c;
    c.command = command;
    c.out = dir_.string();
    c.no_meta = true;
    return c;
  }

  CommandResult run(const ExperimentConfig& c) {
    console_.str("");
    return execute(c, console_);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::ostringstream console_;
};

const json* find_scheme(const json& entries, const std::string& name) {
  for (const auto& e : entries)
    if (e["scheme"] == name) return &e;
  return nullptr;
}

}  // namespace

TEST(Config, DefaultRoundTrip) {
  ExperimentConfig c;
  c.command = "run";
  const json j = c;
  EXPECT_EQ(j.get<ExperimentConfig>(), c);
  EXPECT_TRUE(j["phi"].is_null());
}

TEST(Config, PopulatedRoundTrip) {
  ExperimentConfig c;
  c.command = "convergence";
  c.schemes = {"ssp(3,2)", "ssp(4,2)"};
  c.tableaux = {"mine.json"};
  c.recons = {"pwc"};
  c.problem = "barenblatt";
  c.lambda = "1.75";
  c.phi = 0.1 + 0.2;  // not exactly representable in decimal
  c.c1 = 0.79;
  c.delta = 0.0;
  c.dt = 1e-5;
  c.t_end = 0.0493594;
  c.grids = {20, 40, 80};
  c.m = 3.0;
  c.svg = "x.svg";
  c.formats = {"json"};
  c.no_meta = true;
  c.seed = 42;
  const auto text = json(c).dump();
  EXPECT_EQ(json::parse(text).get<ExperimentConfig>(), c);
}

TEST(Config, MissingKeysTakeDefaults) {
  const auto c = json::parse(R"({"command":"stability"})").get<ExperimentConfig>();
  ExperimentConfig d;
  d.command = "stability";
  EXPECT_EQ(c, d);
}

TEST(Config, Validation) {
  ExperimentConfig c;
  c.command = "run";
  EXPECT_NO_THROW(validate(c));
  c.lambda = "max";
  EXPECT_THROW(validate(c), UsageError);
  c.lambda = "-1";
  EXPECT_THROW(validate(c), UsageError);
  c.lambda = "2.5";
  EXPECT_NO_THROW(validate(c));
  c.formats = {"svg"};
  EXPECT_THROW(validate(c), UsageError);
  c.formats.clear();
  c.t_end = 0.0;
  EXPECT_THROW(validate(c), UsageError);
  c.t_end.reset();
  c.command = "plot";
  EXPECT_THROW(validate(c), UsageError);
  c.command = "convergence";
  c.grids = {80};
  try {
    validate(c);
    FAIL() << "expected UsageError";
  } catch (const UsageError& e) {
    EXPECT_STREQ(e.what(), ">=3 grids required");
  }
}

TEST(Config, SplitKeepsParenthesisedCommas) {
  EXPECT_EQ(split_list("ssp(3,2), ssp(4,2)"), (std::vector<std::string>{"ssp(3,2)", "ssp(4,2)"}));
  EXPECT_EQ(split_list("20,40,80"), (std::vector<std::string>{"20", "40", "80"}));
  EXPECT_TRUE(split_list("").empty());
}

TEST(Config, OutputResolution) {
  ExperimentConfig c;
  c.command = "cfl-table";
  c.out = "results";
  auto t = resolve_output(c);
  EXPECT_EQ(t.dir, fs::path("results"));
  EXPECT_EQ(t.stem, "cfl_table");
  c.out = "out/region.csv";
  t = resolve_output(c);
  EXPECT_EQ(t.file("json"), fs::path("out/region.json"));
  c.out = "run.json";
  EXPECT_EQ(resolve_output(c).file("csv"), fs::path("./run.csv"));
}

TEST_F(CliTest, StabilityForwardEuler) {
  auto c = config("stability");
  c.schemes = {"SSP(1,1)"};
  const auto r = run(c);
  const auto& e = r.report["schemes"][0];
  EXPECT_EQ(e["scheme"], "ssp(1,1)");
  EXPECT_NEAR(e["lambda_opt"].get<double>(), 1.0, 1e-9);
  EXPECT_NEAR(e["eta"].get<double>(), 2.0, 1e-9);
  EXPECT_FALSE(r.report.contains("meta"));
  EXPECT_EQ(r.report["config"].get<ExperimentConfig>(), c);

  const auto csv = slurp(dir_ / "stability.csv");
  EXPECT_EQ(csv.rfind("theta,re,im\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 721);
  EXPECT_FALSE(fs::exists(dir_ / "stability.svg"));
}

TEST_F(CliTest, StabilityOptimalLambda) {
  auto c = config("stability");
  c.schemes = {"ssp(5,3)"};
  EXPECT_NEAR(run(c).report["schemes"][0]["lambda_opt"].get<double>(), 3.106, 0.002);

  c.schemes = {"ssp(3,2)", "ssp(4,2)"};
  c.svg = (dir_ / "region.svg").string();
  const auto r = run(c);
  ASSERT_EQ(r.report["schemes"].size(), 2u);
  EXPECT_NEAR((*find_scheme(r.report["schemes"], "ssp(3,2)"))["lambda_opt"].get<double>(), 2.259, 0.002);
  EXPECT_NEAR((*find_scheme(r.report["schemes"], "ssp(4,2)"))["lambda_opt"].get<double>(), 3.0, 0.002);
  EXPECT_TRUE(fs::exists(dir_ / "stability_ssp_3_2.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "stability_ssp_4_2.csv"));

  const auto svg = slurp(dir_ / "region.svg");
  EXPECT_NE(svg.find("<circle"), std::string::npos);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_GE(std::count(svg.begin(), svg.end(), 'M'), 2);
}

TEST_F(CliTest, StabilityErrors) {
  auto c = config("stability");
  c.schemes = {"ssp(6,3)"};
  try {
    run(c);
    FAIL() << "expected UsageError";
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("ssp(5,3)"), std::string::npos);
  }
  c.schemes = {"ssp(1,1)", "ssp(2,2)", "ssp(3,3)", "ssp(4,3)"};
  c.formats = {"svg"};
  EXPECT_THROW(run(c), UsageError);
  c.schemes.clear();
  EXPECT_THROW(run(c), UsageError);
}

TEST_F(CliTest, UserTableauJoinsPipeline) {
  fs::create_directories(dir_);
  const auto file = dir_ / "heun.json";
  std::ofstream(file) << R"({"s":2,"p":2,"a":[[0,0],[1,0]],"b":[0.5,0.5]})";
  auto c = config("stability");
  c.tableaux = {file.string()};
  const auto r = run(c);
  const auto& e = r.report["schemes"][0];
  EXPECT_EQ(e["scheme"], "heun");
  EXPECT_TRUE(e["lambda_ssp"].is_null());
  EXPECT_NEAR(e["eta"].get<double>(), 2.0, 1e-9);
}

TEST_F(CliTest, CflTableRows) {
  const auto r = run(config("cfl-table"));
  const auto& c1 = r.report["c1"];
  ASSERT_EQ(r.report["reconstructions"], json({"pwc", "pwl", "weno5"}));
  const double pwc[] = {2.0, 2.0, 2.51}, weno[] = {0.79, 0.79, 1.00}, pwl[] = {0.94, 0.94, 1.18};
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(c1[0][k].get<double>(), pwc[k], 0.01) << k;
    EXPECT_NEAR(c1[1][k].get<double>(), pwl[k], 0.02) << k;
    EXPECT_NEAR(c1[2][k].get<double>(), weno[k], 0.01) << k;
  }
  EXPECT_NE(console_.str().find("weno5"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "cfl_table.txt"));
}

TEST_F(CliTest, ConvergenceSspTable) {
  auto c = config("convergence");
  c.schemes = {"ssp(3,3)", "ssp(4,3)", "ssp(5,3)"};
  c.lambda = "ssp";
  c.grids = {20, 40, 80};
  c.t_end = 405 * 1.21875e-4;
  const auto r = run(c);
  const auto& s5 = r.report["reports"][2];
  EXPECT_EQ(s5["stages"], 5);
  EXPECT_NEAR(s5["lambda"].get<double>(), 2.65, 0.01);
  EXPECT_NEAR(s5["n_f"].get<double>(), 770, 0.02 * 770);
  EXPECT_NE(console_.str().find("N_f"), std::string::npos);
  EXPECT_NE(console_.str().find("×0.78"), std::string::npos);
}

TEST_F(CliTest, ConvergenceOptimalCalibrated) {
  auto c = config("convergence");
  c.schemes = {"ssp(4,3)"};
  c.grids = {20, 40, 80};
  c.t_end = 405 * 1.21875e-4;
  const auto r = run(c);
  const auto& rep = r.report["reports"][0];
  EXPECT_NEAR(rep["lambda"].get<double>(), 2.574, 0.002);
  EXPECT_NEAR(rep["n_f"].get<double>(), 636, 0.02 * 636);
}

TEST_F(CliTest, RunWritesStatsAndField) {
  auto c = config("run");
  c.schemes = {"ssp(2,2)"};
  c.lambda = "1";
  c.t_end = 405 * 1.21875e-4;
  c.out = (dir_ / "run.json").string();
  const auto r = run(c);
  EXPECT_EQ(r.report["stats"]["n_f"], 810);
  EXPECT_NEAR(r.report["mass"]["drift"].get<double>(), 0.0, 1e-12);
  const auto on_disk = json::parse(slurp(dir_ / "run.json"));
  EXPECT_EQ(on_disk, r.report);
  const auto csv = slurp(dir_ / "run.csv");
  EXPECT_EQ(csv.rfind("x,u\n0.00625,", 0), 0u);
}

TEST_F(CliTest, FormatsRestrictFiles) {
  auto c = config("run");
  c.formats = {"json"};
  c.n = 20;
  const auto r = run(c);
  ASSERT_EQ(r.files.size(), 1u);
  EXPECT_EQ(r.files[0].filename(), "run.json");
}

TEST_F(CliTest, OutputIsReproducible) {
  auto c = config("barenblatt");
  c.problem = "barenblatt";
  c.n = 60;
  c.t_end = 0.2;
  run(c);
  const auto first = slurp(dir_ / "barenblatt.json") + slurp(dir_ / "barenblatt.csv");
  run(c);
  EXPECT_EQ(slurp(dir_ / "barenblatt.json") + slurp(dir_ / "barenblatt.csv"), first);

  c.no_meta = false;
  const auto r = run(c);
  ASSERT_TRUE(r.report.contains("meta"));
  EXPECT_EQ(r.report["meta"]["version"], "0.1.0");
}

TEST_F(CliTest, BarenblattSupportAndStudy) {
  auto c = config("barenblatt");
  c.problem = "barenblatt";
  c.grids = {50, 100, 200};
  c.n = 100;
  const auto r = run(c);
  const auto& sup = r.report["support"];
  EXPECT_LE(sup["offset_cells"].get<double>(), 2.0);
  rssp_problem p = nullptr;
  ASSERT_EQ(rssp_problem_barenblatt(2.0, 1.0, 1.0, 1.0, &p), RSSP_OK);
  const double phi = std::sqrt(rssp_problem_mu(p));
  rssp_problem_destroy(p);
  EXPECT_DOUBLE_EQ(r.report["scheme_config"]["phi"].get<double>(), phi);
  EXPECT_DOUBLE_EQ(r.report["convergence"]["scheme_config"]["phi"].get<double>(), phi);
  EXPECT_GT(r.report["convergence"]["fitted_order_l1"].get<double>(), 1.0);
}

TEST_F(CliTest, LibraryErrorsCarryStatus) {
  auto c = config("run");
  c.problem = "barenblatt";
  c.phi = 0.1;
  try {
    run(c);
    FAIL() << "expected CommandError";
  } catch (const CommandError& e) {
    EXPECT_EQ(e.status(), 3);
    EXPECT_NE(std::string(e.what()).find("subcharacteristic"), std::string::npos);
  }
}
