#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "aging/hazard_model.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "aging");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = aging::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("aging_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

  fs::path dir_;
};

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell.empty() ? NAN : std::strtod(cell.c_str(), nullptr));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(GridSpec, Parsing) {
  const auto g = aging::cli::parse_grid_spec("0.1:5:64");
  EXPECT_EQ(g.points, 64u);
  EXPECT_EQ(g.spacing, aging::cli::Spacing::Default);
  EXPECT_EQ(aging::cli::parse_grid_spec("1:2:3:lin").spacing, aging::cli::Spacing::Linear);
  for (const char* bad : {"1:2", "a:2:3", "2:1:3", "1:2:1", "1:2:3:cubic", "1:2:3.5"}) {
    EXPECT_THROW(aging::cli::parse_grid_spec(bad), aging::cli::UsageError) << bad;
  }
  const auto logs = aging::cli::make_grid(aging::cli::parse_grid_spec("0.1:10:3"), 0.0);
  EXPECT_NEAR(logs[1], 1.0, 1e-12);
  const auto lin = aging::cli::make_grid(aging::cli::parse_grid_spec("1.5:3.5:3"), 1.0);
  EXPECT_NEAR(lin[1], 2.5, 1e-12);
}

TEST_F(CliTest, AnalyzeWeibullAiColumn) {
  const auto r = run({"analyze", "--model", "weibull:alpha=0.5,beta=1.5", "--grid", "0.1:5:64", "--out", path("p.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(slurp(path("p.csv")));
  ASSERT_EQ(rows.size(), 64u);
  for (const auto& row : rows) {
    EXPECT_NEAR(row[5], 1.5, 1e-9);
    // Printed with 12 significant digits.
    EXPECT_NEAR(row[1], 0.75 * std::sqrt(row[0]), 1e-11 * row[1]);
  }
}

TEST_F(CliTest, AnalyzeJsonToStdout) {
  const auto r = run({"analyze", "--model", "exp:lambda=2", "--grid", "0.5:2:4", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_FALSE(j.empty());
}

TEST_F(CliTest, RoundTripThroughTabulated) {
  ASSERT_EQ(run({"analyze", "--model", "rayleigh:a=1,b=2", "--grid", "0.1:4:40", "--out", path("p.csv")}).code, 0);
  const auto rows = csv_rows(slurp(path("p.csv")));
  const auto tab = aging::parse_model_spec("tabulated:file=" + path("p.csv"));
  for (const auto& row : rows) EXPECT_NEAR(tab.hazard(row[0]), row[1], 1e-3 * row[1]);
}

TEST_F(CliTest, CompareExponentials) {
  const auto r = run({"compare", "--x", "exp:lambda=2", "--y", "exp:lambda=1", "--grid", "0.1:5:16", "--orders", "all"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  std::map<std::string, std::string> dir;
  for (const auto& o : j.at("orders")) dir[o.at("order")] = o.at("direction");
  EXPECT_EQ(dir.at("FR"), "XleY");
  for (const char* k : {"AFR", "GFR", "HFR"}) EXPECT_EQ(dir.at(k), "XleY") << k;
  EXPECT_EQ(j.at("implications").at("violations"), 0);
}

TEST_F(CliTest, ClassifySystemEstimate) {
  auto r = run({"classify", "--model", "rayleigh:a=1,b=1", "--grid", "0.1:5:32"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).size(), 7u);

  r = run({"system", "--component", "rayleigh:a=1,b=1", "--component", "exp:lambda=1", "--grid", "0.5:2:8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out).at("all_hold").get<bool>());

  std::string csv = "time,status\n";
  for (int i = 1; i <= 200; ++i) csv += std::to_string(0.01 * i * i / 40) + "," + (i % 7 ? "1" : "0") + "\n";
  write("d.csv", csv);
  r = run({"estimate", "--input", path("d.csv"), "--format", "json", "--grid-size", "32"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("kernel"), "epanechnikov");
  EXPECT_GT(j.at("bandwidth").get<double>(), 0.0);
  EXPECT_EQ(slurp(path("d.csv")), csv);
}

TEST_F(CliTest, SimulateIsDeterministic) {
  write("study.cfg", "alpha=0.5\nbeta=1.5\nsample_sizes=100,200\nreplications=3\nbase_seed=7\n");
  const std::string cfg = slurp(path("study.cfg"));
  ASSERT_EQ(run({"simulate", "--config", path("study.cfg"), "--out", path("a.json"), "--csv", path("a.csv")}).code, 0);
  ASSERT_EQ(run({"simulate", "--config", path("study.cfg"), "--out", path("b.json")}).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_FALSE(slurp(path("a.csv")).empty());
  EXPECT_EQ(slurp(path("study.cfg")), cfg);
  EXPECT_EQ(json::parse(slurp(path("a.json"))).at("seeds"), (json{7, 8, 9}));
}

TEST_F(CliTest, SeedPrecedence) {
  write("study.cfg", "sample_sizes=100\nreplications=1\n");
  ::setenv("AGING_SEED", "555", 1);
  auto r = run({"simulate", "--config", path("study.cfg")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("seeds"), (json{555}));
  r = run({"simulate", "--config", path("study.cfg"), "--seed", "12"});
  EXPECT_EQ(json::parse(r.out).at("seeds"), (json{12}));
  ::unsetenv("AGING_SEED");
  r = run({"simulate", "--config", path("study.cfg")});
  EXPECT_EQ(json::parse(r.out).at("seeds"), (json{20240611}));
}

TEST_F(CliTest, DomainErrorsExitOne) {
  auto r = run({"analyze", "--model", "weibull:alpha=-1,beta=1.5", "--grid", "0.1:5:8"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--model"), std::string::npos);
  EXPECT_NE(r.err.find("InvalidParameter"), std::string::npos);

  r = run({"compare", "--x", "pareto:a=2,k=1", "--y", "exp:lambda=1", "--grid", "1.5:5:8"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("MixedSupports"), std::string::npos);

  write("cens.csv", "time,status\n1,0\n2,0\n");
  r = run({"estimate", "--input", path("cens.csv")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("AllCensored"), std::string::npos);

  write("bad.cfg", "sample_sizes=10\n");
  EXPECT_EQ(run({"simulate", "--config", path("bad.cfg")}).code, 1);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"analyze", "--grid", "0.1:5:8"}).code, 2);
  auto r = run({"analyze", "--model", "exp:lambda=1", "--grid", "0.1:five:8"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--grid"), std::string::npos);
  r = run({"analyze", "--model", "exp:lambda=1", "--grid", "0.1:5:8", "--format", "xml"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--format"), std::string::npos);
  r = run({"estimate", "--input", path("missing.csv")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--input"), std::string::npos);
  r = run({"analyze", "--model", "exp:lambda=1", "--grid", "0.1:5:8", "--out", path("no/such/dir/p.csv")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--out"), std::string::npos);
  EXPECT_EQ(run({"compare", "--x", "exp:lambda=1", "--y", "exp:lambda=2", "--grid", "0.1:5:8", "--orders", "XYZ"}).code, 2);
}
