#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "nlfrac/catalog.hpp"
#include "nlfrac/report.hpp"

using namespace nlfrac;
using nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nlfrac_test_" + std::to_string(::getpid()) + "_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json without_runtime(json j) {
  j.erase("runtime");
  return j;
}

}  // namespace

TEST(Cli, FractionJsonRoundTripsByteForByte) {
  const CliResult r = run({"fraction", "--state", "GHZ3", "--scenario", "2x2x2", "--n", "500"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(dump_json(j), r.out);
  EXPECT_EQ(j["command"], "fraction");
  EXPECT_EQ(j["family_size"], 96);
  EXPECT_EQ(j["result"]["n_samples"], 500);
  EXPECT_EQ(j["result"]["p_v"], j["result"]["histogram"]["total_mass"]);
}

TEST(Cli, ThreadCountOnlyAffectsRuntimeBlock) {
  const CliResult a = run({"strength", "--state", "W3", "--scenario", "2x2x2", "--n", "700", "--threads", "1"});
  const CliResult b = run({"strength", "--state", "W3", "--scenario", "2x2x2", "--n", "700", "--threads", "3"});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(json::parse(b.out)["runtime"]["threads"], 3);
  EXPECT_EQ(without_runtime(json::parse(a.out)), without_runtime(json::parse(b.out)));
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"fraction", "--scenario", "2x2x2"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"fraction", "--state", "GHZ3", "--scenario", "2x2x9"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"fraction", "--state", "GHZ4", "--scenario", "2x2x2"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"fraction", "--state", "GHZ3", "--scenario", "2x2x2", "--detector", "I_77"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"fraction", "--state", "GHZ3", "--scenario", "2x2x2", "--v", "1.5"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kExitUsage);
}

TEST(Cli, LpFailuresExitThree) {
  const CliResult r = run({"fraction", "--state", "GHZ3", "--scenario", "2x2x2", "--detector", "lp", "--n", "20",
                     "--lp-pivot-limit", "2"});
  EXPECT_EQ(r.code, cli::kExitNumerical);
  EXPECT_NE(r.err.find("discarded"), std::string::npos);
  EXPECT_GT(json::parse(r.out)["result"]["discarded"].get<int>(), 0);
}

TEST(Cli, CatalogExport) {
  const auto path = temp_path("catalog.json");
  ASSERT_EQ(run({"catalog", "--export", path.string()}).code, 0);
  const json j = json::parse(slurp(path));
  std::filesystem::remove(path);
  bool found = false;
  for (const auto& ineq : j["inequalities"]) {
    EXPECT_EQ(ineq["bound"], 0);
    if (ineq["name"] == "I_5") {
      found = true;
      EXPECT_EQ(ineq["nonzero_terms"], 17);
      EXPECT_EQ(ineq["terms"].size(), 17u);
      EXPECT_EQ(ineq["constant"], -3);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_FALSE(j["states"].empty());
}

TEST(Cli, CatalogListing) {
  const CliResult r = run({"catalog"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("state\tGHZ3\t2x2x2"), std::string::npos);
  EXPECT_NE(r.out.find("inequality\tI_5\t2x2x2"), std::string::npos);
}

TEST(Cli, HistogramCsv) {
  const auto path = temp_path("hist.csv");
  const CliResult r = run({"strength", "--state", "GHZ3", "--scenario", "2x2x2", "--n", "400", "--histogram", path.string()});
  ASSERT_EQ(r.code, 0);
  std::istringstream csv(slurp(path));
  std::filesystem::remove(path);
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "s_low,s_high,mass,density");
  int rows = 0;
  double mass = 0.0;
  while (std::getline(csv, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 3);
    std::istringstream fields(line);
    std::string cell;
    for (int k = 0; k < 3; ++k) std::getline(fields, cell, ',');
    mass += std::stod(cell);
  }
  EXPECT_EQ(rows, 200);
  EXPECT_NEAR(mass, json::parse(r.out)["result"]["p_v"].get<double>(), 1e-12);
}

TEST(Cli, AmplitudeFileMatchesCatalogState) {
  const auto path = temp_path("ghz3.txt");
  {
    std::ofstream f(path);
    f << "# unnormalized GHZ\n0 1 0\n7 1 0\n";
  }
  const CliResult a = run({"fraction", "--state", path.string(), "--scenario", "2x2x2", "--n", "300"});
  const CliResult b = run({"fraction", "--state", "GHZ3", "--scenario", "2x2x2", "--n", "300"});
  std::filesystem::remove(path);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(json::parse(a.out)["result"], json::parse(b.out)["result"]);
}

TEST(Cli, WitnessAndNoise) {
  const CliResult r = run({"witness", "--state", "GHZ3", "--scenario", "2x2x2", "--n", "2000"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["witness"]["verdict"], "detected");
  const CliResult n = run({"fraction", "--state", "GHZ3", "--scenario", "2x2x2", "--n", "500", "--v", "0"});
  EXPECT_EQ(json::parse(n.out)["result"]["p_v"], 0.0);
}

TEST(Cli, LpCheckReportsConsistency) {
  const CliResult r = run({"lp-check", "--state", "W3", "--scenario", "2x2x2", "--n", "200"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["paired"]["consistent"].get<bool>());
  EXPECT_LE(j["family"]["p_v"].get<double>(), j["lp"]["p_v"].get<double>());
}

TEST(Cli, TypicalityRuns) {
  const CliResult r = run({"typicality", "--scenario", "2x2x2", "--n", "300"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["qubits"], 3);
  EXPECT_EQ(j["result"]["n_states"], 300);
}

TEST(Report, AmplitudeFileValidation) {
  const auto path = temp_path("bad.txt");
  {
    std::ofstream f(path);
    f << "9 1 0\n";
  }
  EXPECT_THROW(read_amplitude_file(path.string(), 3), std::invalid_argument);
  {
    std::ofstream f(path);
    f << "0 one 0\n";
  }
  EXPECT_THROW(read_amplitude_file(path.string(), 3), std::invalid_argument);
  {
    std::ofstream f(path);
    f << "# nothing\n";
  }
  EXPECT_THROW(read_amplitude_file(path.string(), 3), std::invalid_argument);
  std::filesystem::remove(path);
}
