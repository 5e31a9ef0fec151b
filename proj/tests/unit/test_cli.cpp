#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "classif/io.hpp"
#include "cli.hpp"

namespace classif::cli {
namespace {

using nlohmann::json;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("classif_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
    csv_ = (dir_ / "moons.csv").string();
    ASSERT_EQ(run({"generate", "--kind", "moons", "--n", "300", "--noise", "0.15", "--seed", "4", "--out", csv_})
                  .code,
              kExitOk);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path dir_;
  std::string csv_;
};

TEST_F(CliTest, EstimateReportsLimit) {
  const auto r = run({"estimate", "--dataset", csv_, "--label", "label", "--k", "16", "--metric", "l2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_GT(j["limit"].get<double>(), 0.9);
  EXPECT_EQ(j["config"]["k"], 16);
  EXPECT_EQ(j["n"], 300);
  EXPECT_NE(r.err.find("limit"), std::string::npos);
}

TEST_F(CliTest, EstimateAllMetricsMarksBest) {
  const auto r = run({"estimate", "--dataset", csv_, "--metric", "all", "--k", "8"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  ASSERT_EQ(j["results"].size(), 6u);
  double best = -1;
  std::string name;
  for (const auto& item : j["results"]) {
    if (item["limit"].get<double>() > best) {
      best = item["limit"].get<double>();
      name = item["config"]["metric"].get<std::string>();
    }
  }
  EXPECT_EQ(j["best_metric"], name);
  EXPECT_EQ(j["best_limit"], best);
}

TEST_F(CliTest, DefaultNeighborhoodIsClippedFraction) {
  const auto r = run({"estimate", "--dataset", csv_});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(json::parse(r.out)["config"]["k"], 6);  // round(0.015 * 300) = 5 -> 6
  const auto rad = run({"estimate", "--dataset", csv_, "--radius-fraction", "0.05"});
  EXPECT_EQ(json::parse(rad.out)["config"]["mode"], "radius");
}

TEST_F(CliTest, OutFileAndEntropyCsv) {
  const auto out = (dir_ / "r.json").string();
  const auto ent = (dir_ / "e.csv").string();
  const auto r = run({"estimate", "--dataset", csv_, "--radius", "0.2", "--out", out, "--entropy-csv", ent});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(out);
  EXPECT_EQ(json::parse(f)["config"]["mode"], "radius");
  std::ifstream e(ent);
  std::string header;
  std::getline(e, header);
  EXPECT_EQ(header, "index,label,entropy,neighborhood_size,x0,x1");
}

TEST_F(CliTest, OtherSubcommands) {
  auto r = run({"jackknife", "--dataset", csv_, "--k", "8", "--seed", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(json::parse(r.out)["subsample_limits"].size(), 10u);

  r = run({"sweep-subsample", "--dataset", csv_, "--k", "8", "--proportions", "0.5,1", "--repeats", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(json::parse(r.out)["curve"].size(), 2u);

  r = run({"compare", "--dataset", csv_, "--k", "5", "--metric", "l2", "--repeats", "3", "--train-fraction", "0.6667"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto c = json::parse(r.out);
  EXPECT_EQ(c["knn"]["accuracies"].size(), 3u);
  EXPECT_TRUE(c.contains("radius"));
  EXPECT_TRUE(c.contains("limit"));

  r = run({"entropy-map", "--dataset", csv_, "--k", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 301);

  r = run({"sweep-noise", "--kind", "blobs", "--n", "120", "--seeds", "2", "--noise-levels", "0,0.5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(json::parse(r.out)["curve"].size(), 2u);
}

TEST(Cli, OracleLinear) {
  const auto r = run({"oracle", "--problem", "linear1d"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(json::parse(r.out)["limit"].get<double>(), 0.75, 1e-3);
}

TEST(Cli, OracleProblemFile) {
  const auto path = std::filesystem::temp_directory_path() / "classif_problem.json";
  {
    std::ofstream f(path);
    f << R"({"bounds": [[0, 1]], "cells": [100], "classes": [{"family": "uniform", "lower": [0], "upper": [1]},
            {"family": "uniform", "lower": [0], "upper": [1]}]})";
  }
  const auto r = run({"oracle", "--problem-file", path.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(json::parse(r.out)["limit"].get<double>(), 0.5, 1e-12);
  {
    std::ofstream f(path);
    f << "{not json";
  }
  EXPECT_EQ(run({"oracle", "--problem-file", path.string()}).code, kExitData);
  std::filesystem::remove(path);
}

TEST(Cli, Overclass) {
  const auto r = run({"overclass", "--resolutions", "4,4,3,3", "--points", "2879"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["potential_classes"], 144);
  EXPECT_EQ(j["min_points"], 2880);
  EXPECT_EQ(j["over_classified"], true);
  EXPECT_EQ(run({"overclass", "--resolutions", "4,0"}).code, kExitUsage);
  EXPECT_EQ(run({"overclass", "--resolutions", "4294967296,4294967296"}).code, kExitData);
  EXPECT_EQ(run({"overclass", "--resolutions", "4,x"}).code, kExitUsage);
}

TEST(Cli, GenerateToStdout) {
  const auto r = run({"generate", "--kind", "linear1d", "--n", "10", "--seed", "3"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.substr(0, 9), "x0,label\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"estimate"}).code, kExitUsage);
  EXPECT_EQ(run({"estimate", "--dataset", "x.csv", "--k", "3", "--radius", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"estimate", "--dataset", "x.csv", "--metric", "euclid"}).code, kExitUsage);
  EXPECT_EQ(run({"estimate", "--dataset", "/nonexistent.csv"}).code, kExitData);
  EXPECT_EQ(run({"generate", "--kind", "spirals"}).code, kExitData);
  EXPECT_EQ(run({"compare", "--dataset", "x.csv", "--metric", "cosine"}).code, kExitUsage);
  EXPECT_EQ(run({"oracle"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(CliTest, DataErrorsExitTwo) {
  EXPECT_EQ(run({"estimate", "--dataset", csv_, "--k", "300"}).code, kExitData);
  EXPECT_EQ(run({"estimate", "--dataset", csv_, "--label", "nope"}).code, kExitData);
  EXPECT_EQ(run({"jackknife", "--dataset", csv_, "--fraction", "1.0"}).code, kExitData);
}

TEST_F(CliTest, ScaleFlagStandardizes) {
  const auto plain = run({"estimate", "--dataset", csv_, "--k", "10"});
  const auto scaled = run({"estimate", "--dataset", csv_, "--k", "10", "--scale"});
  ASSERT_EQ(scaled.code, kExitOk);
  EXPECT_NE(plain.out, "");
}

TEST_F(CliTest, RepeatableAcrossRunsAndThreads) {
  const std::vector<std::string> base = {"estimate", "--dataset", csv_, "--k", "12", "--threads"};
  auto a = base;
  a.push_back("1");
  auto b = base;
  b.push_back("3");
  EXPECT_EQ(run(a).out, run(b).out);
  const std::vector<std::string> gen = {"generate", "--kind", "circles", "--n", "50", "--noise", "0.1", "--seed", "8"};
  EXPECT_EQ(run(gen).out, run(gen).out);
}

}  // namespace
}  // namespace classif::cli
