#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../tools/dispatch.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rwrers");
  std::ostringstream out, err;
  CliRun r;
  r.code = rwrers::cli::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rwrers_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, HelpAndVersion) {
  EXPECT_EQ(cli({"--help"}).code, 0);
  const CliRun v = cli({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("1.0.0"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"wander"}).code, 2);
  EXPECT_EQ(cli({"stationarity", "--M", "lots"}).code, 2);
  const CliRun bad = cli({"stationarity", "--space", "tree3", "--kernel", "alili", "--out", dir_.string()});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("alili"), std::string::npos);
  EXPECT_EQ(cli({"mtp-check", "--space", "line", "--f", "absolute-coordinate", "--seed", "1", "--out", dir_.string()})
                .code,
            2);
  EXPECT_EQ(cli({"stationarity", "--config", (dir_ / "missing.json").string()}).code, 2);
}

TEST_F(Cli, StationarityWritesOutputsAndReplays) {
  const CliRun r = cli({"stationarity", "--space", "tree3", "--kernel", "srw-clusters", "--M", "300", "--N", "4",
                     "--R", "4", "--seed", "21", "--workers", "2", "--csv", "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("seed: 21"), std::string::npos);
  for (const char* f : {"stationarity.jsonl", "stationarity.summary.json", "stationarity.manifest.json",
                        "stationarity.csv"})
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  const std::string jsonl = slurp(dir_ / "stationarity.jsonl");
  const json manifest = json::parse(slurp(dir_ / "stationarity.manifest.json"));
  EXPECT_EQ(manifest["subcommand"], "stationarity");
  EXPECT_EQ(manifest["config"]["seed"], 21);
  const auto lines = static_cast<std::size_t>(std::count(jsonl.begin(), jsonl.end(), '\n'));
  EXPECT_GE(lines, 5u * 6u);
  EXPECT_EQ(lines % 5u, 0u);

  const CliRun replay = cli({"stationarity", "--config", (dir_ / "stationarity.manifest.json").string(), "--name",
                          "replay", "--workers", "1", "--out", dir_.string()});
  ASSERT_EQ(replay.code, 0) << replay.err;
  EXPECT_EQ(slurp(dir_ / "replay.jsonl"), jsonl);
}

TEST_F(Cli, GeneratedSeedIsReported) {
  const CliRun r = cli({"kernel-check", "--space", "tree3", "--window", "2", "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("(generated)"), std::string::npos);
}

TEST_F(Cli, FailedPropertyExitsOne) {
  const CliRun r = cli({"kernel-check", "--space", "tree-end3", "--kernel", "srw-clusters", "--seed", "2", "--window",
                     "3", "--out", dir_.string()});
  EXPECT_EQ(r.code, 1) << r.err;
  const CliRun ok = cli({"mtp-check", "--space", "tree-end3", "--f", "parent-indicator", "--seed", "2", "--out",
                      dir_.string()});
  EXPECT_EQ(ok.code, 0) << ok.err;
}

TEST_F(Cli, OutputDirectoryFromEnvironment) {
  ::setenv("RWRERS_OUTPUT_DIR", dir_.string().c_str(), 1);
  const CliRun r = cli({"mtp-check", "--space", "tree3", "--f", "one-edge", "--seed", "2", "--name", "env"});
  ::unsetenv("RWRERS_OUTPUT_DIR");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "env.jsonl"));
}
