// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "stablespec_tools/cli.hpp"
#include "stablespec_tools/config.hpp"

using namespace stablespec::tools;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "stablespec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST(Cli, HatJAtZero) {
  const auto r = run_cli({"specfun", "--fn", "hatJ", "--alpha", "1.5", "--x", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "x,value\n0,0.373282173907\n");
}

TEST(Cli, JsonUsesSeventeenDigits) {
  const auto r = run_cli({"specfun", "--fn", "calJ", "--x", "1", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_NEAR(j[0]["value"].get<double>(), 0.43935910651117163919, 1e-15);
  EXPECT_NE(r.out.find("0.4393591065111"), std::string::npos);
}

TEST(Cli, KernelBothRepresentations) {
  const auto r = run_cli({"kernel", "--alpha", "1.5", "--t", "1", "--x", "1", "--y", "1", "--rep", "both"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header;
  std::string a;
  std::string b;
  std::getline(in, header);
  std::getline(in, a);
  std::getline(in, b);
  EXPECT_EQ(header, "t,x,y,value,error_estimate,rep_used");
  EXPECT_NE(a.find(",integral"), std::string::npos);
  EXPECT_NE(b.find(",series"), std::string::npos);
  const double va = std::stod(a.substr(6, a.find(',', 6) - 6));
  const double vb = std::stod(b.substr(6, b.find(',', 6) - 6));
  EXPECT_NEAR(va, vb, 1e-10);
}

TEST(Cli, DensityCsvHeader) {
  const auto r = run_cli({"density", "--name", "lambda_G", "--grid-n", "300", "--grid-hi", "12"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "y,density");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 301);
}

TEST(Cli, SolveNamedFamily) {
  const auto r = run_cli({"solve", "--family", "e", "--kappa", "1", "--tau", "1", "--t", "0.5", "--x", "0.5,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t,x,value");
  EXPECT_NE(r.err.find("route e_class"), std::string::npos);
}

TEST(Cli, SolveFromCsv) {
  std::ostringstream csv;
  csv << "x,value\n";
  csv.precision(17);
  for (int i = 0; i < 400; ++i) {
    const double x = 1e-3 * std::pow(10.0, 4.0 * i / 399.0);
    csv << x << "," << std::exp(-x * x * x) << "\n";
  }
  const auto p = temp_file("stablespec_cli_init.csv", csv.str());
  const auto r = run_cli({"solve", "--input", p.string(), "--class", "weighted", "--kappa", "3", "--eta", "1", "--t",
                          "0.5", "--x", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("route weighted"), std::string::npos);
}

TEST(Cli, MonteCarloRecord) {
  const auto r = run_cli({"mc", "--n-paths", "500", "--n-steps", "20", "--seed", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  for (const char* k : {"mean", "stderr", "n_paths", "config_hash"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["n_paths"].get<long>(), 500);
  EXPECT_EQ(run_cli({"mc", "--n-paths", "500", "--n-steps", "20", "--seed", "3", "--format", "json"}).out, r.out);
}

TEST(Cli, ConfigFileFromEnvironmentAndFlagsOverride) {
  const auto p = temp_file("stablespec_cli_config.json", R"({"alpha": 1.3, "mc": {"n_steps": 7}})");
  setenv(kConfigEnv, p.c_str(), 1);
  auto r = run_cli({"mc", "--dump-config"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["alpha"].get<double>(), 1.3);
  EXPECT_EQ(j["mc"]["n_steps"].get<int>(), 7);
  r = run_cli({"mc", "--dump-config", "--alpha", "1.7"});
  j = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["alpha"].get<double>(), 1.7);
  unsetenv(kConfigEnv);
}

TEST(Cli, BadConfigKeyIsReported) {
  const auto p = temp_file("stablespec_cli_bad.json", R"({"alpah": 1.3})");
  const auto r = run_cli({"specfun", "--config", p.string(), "--x", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("cli: InvalidArgument: unknown config key 'alpah'"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"kernel", "--rep", "nonsense"}).code, 1);
  EXPECT_EQ(run_cli({"specfun", "--alpha", "2.5", "--x", "1"}).code, 1);
  EXPECT_EQ(run_cli({"solve"}).code, 1);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, NumericErrorsNameTheModule) {
  const auto r = run_cli({"kernel", "--t", "-1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.rfind("heatkernel: InvalidArgument:", 0), 0u) << r.err;
  EXPECT_NE(r.err.find("--t -1"), std::string::npos);
  const auto s = run_cli({"solve", "--family", "e", "--kappa", "2.5"});
  EXPECT_EQ(s.code, 1);
  EXPECT_EQ(s.err.rfind("operators: ClassViolation:", 0), 0u) << s.err;
}

TEST(Cli, QuickValidation) {
  const auto r = run_cli({"validate", "--alpha", "1.5", "--quick"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("PASS  [ 1]"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Config, RoundTrip) {
  RunConfig c;
  c.alpha = 1.25;
  c.grid.n = 64;
  nlohmann::json j = c;
  RunConfig d;
  merge_json(d, j);
  EXPECT_EQ(d.alpha, 1.25);
  EXPECT_EQ(d.grid.n, 64);
  EXPECT_NO_THROW(d.validate());
}
