#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "covgame/io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = COVGAME_CLI;
const std::string kScenarios = COVGAME_SCENARIOS;

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("covgame_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " 2>" + (scratch() / "stderr.txt").string();
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) { return covgame::read_file(p.string()); }

}  // namespace

TEST(Cli, RegionDefaultScenario) {
  const auto out = scratch() / "region.csv";
  ASSERT_EQ(run("region --grid-levels 11 --out " + out.string()), 0);
  const auto csv = slurp(out);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "kind,index,weight,p_1,p_2,u_1,u_2");
  EXPECT_NE(csv.find("\nhull,"), std::string::npos);
  EXPECT_NE(csv.find("\nks,"), std::string::npos);
}

TEST(Cli, RepeatedRunsByteIdentical) {
  const auto a = scratch() / "a.csv";
  const auto b = scratch() / "b.csv";
  const std::string common = "simulate --scenario " + kScenarios + "/triangle.ini --grid-levels 5 --deviation " +
                             kScenarios + "/deviate_max.ini --lambda 0.05 --out ";
  ASSERT_EQ(run(common + a.string()), 0);
  ASSERT_EQ(run(common + b.string()), 0);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, MalformedScenarioLeavesNoOutput) {
  const auto out = scratch() / "bad.csv";
  fs::remove(out);
  EXPECT_EQ(run("region --scenario " + kScenarios + "/malformed.ini --out " + out.string()), 2);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_FALSE(fs::exists(out.string() + ".tmp"));
  EXPECT_NE(slurp(scratch() / "stderr.txt").find("malformed.ini:4"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("verify --grid-levels 5 --lambda 0"), 2);
  EXPECT_EQ(run("threshold --scenario /nonexistent/file.ini"), 2);
  EXPECT_EQ(run("bogus"), 2);
  EXPECT_EQ(run("simulate --scenario " + kScenarios + "/path3.ini --grid-levels 3 --deviation " + kScenarios +
                "/deviate_end_path.ini"),
            2);
}

TEST(Cli, CapExceededExitsThree) {
  covgame::ScenarioFile f = covgame::default_scenario();
  for (int k = 0; k < 3; ++k) {
    auto s = f.scenario.sbs[0];
    s.location.x = 1.0 + k;
    f.scenario.sbs.push_back(s);
  }
  f.graph = covgame::ObservationGraph::complete(5);
  const auto path = scratch() / "five.ini";
  covgame::write_file_atomic(path.string(), covgame::serialize(f));
  EXPECT_EQ(run("region --grid-levels 3 --scenario " + path.string() + " --out " + (scratch() / "x.csv").string()), 3);
}

TEST(Cli, VerifyAndThresholdJson) {
  const auto out = scratch() / "verify.json";
  ASSERT_EQ(run("verify --grid-levels 11 --out " + out.string()), 0);
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_TRUE(j["verified"].get<bool>());
  EXPECT_EQ(j["identification_budget"].get<int>(), 2);
  for (const auto& o : j["outcomes"]) EXPECT_LT(o["gain"].get<double>(), 0.0);

  const auto th = scratch() / "threshold.json";
  ASSERT_EQ(run("threshold --grid-levels 11 --out " + th.string()), 0);
  const auto t = nlohmann::json::parse(slurp(th));
  EXPECT_NEAR(t["lambda_star"].get<double>(), j["lambda_star"].get<double>(), 1e-15);
}

TEST(Cli, SimulateSummaryWarnsAboveThreshold) {
  const auto out = scratch() / "trace.csv";
  const auto summary = scratch() / "summary.txt";
  const std::string cmd = kCli + " simulate --grid-levels 11 --lambda 0.99 --out " + out.string() + " > " +
                          summary.string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_NE(slurp(summary).find("warning: lambda >= lambda_star"), std::string::npos);
  EXPECT_EQ(slurp(out).substr(0, 5), "stage");
}

TEST(Cli, DegenerateScenarioNoted) {
  covgame::ScenarioFile f = covgame::default_scenario();
  f.scenario.sbs[1].location.x = 40.0;
  const auto path = scratch() / "apart.ini";
  covgame::write_file_atomic(path.string(), covgame::serialize(f));
  const auto out = scratch() / "apart.json";
  ASSERT_EQ(run("verify --grid-levels 5 --scenario " + path.string() + " --out " + out.string()), 0);
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j["degenerate_players"].size(), 2u);
  EXPECT_TRUE(j["lambda_star"].is_null());
  EXPECT_TRUE(j.contains("note"));
}
