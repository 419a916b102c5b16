// Copyright 2026 The tagforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tagforge/cli.hpp"

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.hpp"

namespace tagforge::cli {
namespace {

using ::tagforge::testing::ReadFile;
using ::tagforge::testing::TempDir;
using ::tagforge::testing::WriteFile;

int RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "tagforge");
  return Main(args);
}

constexpr const char* kSmallSynth =
    "users=30,items=200,categories=5,per-user=30,concentration=0.5,skew=1";

TEST(CliTest, IngestWritesStats) {
  TempDir dir;
  WriteFile(dir.File("c.txt"), "a\nb\n");
  WriteFile(dir.File("x.tsv"),
            "user\titem\tcategory\nu1\ti1\ta\nu1\ti2\tb\nu2\ti1\tb\n");
  ASSERT_EQ(RunCli({"ingest", "--data", dir.File("x.tsv"), "--categories",
                 dir.File("c.txt"), "--out", dir.File("out")}),
            kExitOk);
  const auto stats = nlohmann::json::parse(ReadFile(dir.File("out/stats.json")));
  EXPECT_EQ(stats["num_users"], 2);
  EXPECT_EQ(stats["num_items"], 2);
  EXPECT_EQ(stats["num_annotations"], 3);
  EXPECT_EQ(stats["num_item_category_tuples"], 3);
  EXPECT_DOUBLE_EQ(stats["avg_tags_per_user"].get<double>(), 1.5);
}

TEST(CliTest, MissingFileIsADataError) {
  TempDir dir;
  WriteFile(dir.File("c.txt"), "a\nb\n");
  ::testing::internal::CaptureStderr();
  const int code = RunCli({"ingest", "--data", dir.File("missing.tsv"),
                        "--categories", dir.File("c.txt"), "--out", dir.path()});
  const std::string err = ::testing::internal::GetCapturedStderr();
  EXPECT_EQ(code, kExitData);
  EXPECT_NE(err.find(dir.File("missing.tsv")), std::string::npos);
}

TEST(CliTest, ConfigErrorsUseExitTwo) {
  TempDir dir;
  ::testing::internal::CaptureStderr();
  EXPECT_EQ(RunCli({"sweep", "--synth", kSmallSynth, "--strategies", "bogus",
                 "--out", dir.path()}),
            kExitConfig);
  EXPECT_EQ(RunCli({"sweep", "--out", dir.path()}), kExitConfig);
  EXPECT_EQ(RunCli({"sweep", "--synth", kSmallSynth, "--rho-grid", "0,2", "--out",
                 dir.path()}),
            kExitConfig);
  EXPECT_EQ(RunCli({"sweep", "--synth", kSmallSynth, "--split", "1.0", "--out",
                 dir.path()}),
            kExitConfig);
  EXPECT_EQ(RunCli({"sweep", "--no-such-flag"}), kExitConfig);
  ::testing::internal::GetCapturedStderr();
}

// A split always puts every user inside the training population's support,
// so numeric failures are not reachable from the CLI; check the mapping.
TEST(CliTest, ExitCodeMapping) {
  EXPECT_EQ(ExitCodeFor(ErrorKind::kNumeric), kExitNumeric);
  EXPECT_EQ(ExitCodeFor(ErrorKind::kConfig), kExitConfig);
  EXPECT_EQ(ExitCodeFor(ErrorKind::kValidation), kExitData);
  EXPECT_EQ(ExitCodeFor(ErrorKind::kParse), kExitData);
  EXPECT_EQ(ExitCodeFor(ErrorKind::kIo), kExitData);
}

TEST(CliTest, SynthThenSweepFromFiles) {
  TempDir dir;
  ASSERT_EQ(RunCli({"synth", "--users", "20", "--items", "100", "--num-categories",
                 "4", "--per-user", "25", "--seed", "3", "--out",
                 dir.File("data")}),
            kExitOk);
  WriteFile(dir.File("w.tsv"), "c0\t1\nc1\t1\nc2\t1\nc3\t5\n");
  ASSERT_EQ(RunCli({"sweep", "--data", dir.File("data/annotations.tsv"),
                 "--categories", dir.File("data/categories.txt"), "--tmn-dist",
                 dir.File("w.tsv"), "--rho-grid", "0,0.5,1", "--out",
                 dir.File("run"), "--per-user-dump"}),
            kExitOk);
  const std::string csv = ReadFile(dir.File("run/sweep.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 3);
  const std::string dump = ReadFile(dir.File("run/per_user.jsonl"));
  EXPECT_EQ(std::count(dump.begin(), dump.end(), '\n'), 3 * 3 * 20);
  const auto manifest =
      nlohmann::json::parse(ReadFile(dir.File("run/manifest.json")));
  EXPECT_EQ(manifest["seed"], 1);
  EXPECT_EQ(manifest["rho_grid"].size(), 3u);
  EXPECT_EQ(manifest["strategies"][1]["name"], "tmn");
  EXPECT_EQ(manifest["dataset_hash"].get<std::string>().size(), 16u);
}

TEST(CliTest, OptimizedFullRateRowHasZeroRisk) {
  TempDir dir;
  ASSERT_EQ(RunCli({"sweep", "--synth", kSmallSynth, "--strategies", "optimized",
                 "--rho-grid", "1.0", "--out", dir.path()}),
            kExitOk);
  const std::string csv = ReadFile(dir.File("sweep.csv"));
  const std::string row = csv.substr(csv.find('\n') + 1);
  EXPECT_EQ(row.rfind("optimized,1,", 0), 0u) << row;
  const auto fields = internal::SplitComma(row.substr(0, row.find('\n')));
  EXPECT_EQ(fields[3], "0");
}

TEST(CliTest, SweepIsDeterministicAcrossThreads) {
  TempDir dir;
  for (const char* threads : {"1", "3"}) {
    ASSERT_EQ(RunCli({"sweep", "--synth", kSmallSynth, "--rho-grid", "0:1:0.25",
                   "--seed", "9", "--threads", threads, "--out",
                   dir.File(std::string("t") + threads)}),
              kExitOk);
  }
  EXPECT_EQ(ReadFile(dir.File("t1/sweep.csv")), ReadFile(dir.File("t3/sweep.csv")));
  EXPECT_EQ(ReadFile(dir.File("t1/manifest.json")),
            ReadFile(dir.File("t3/manifest.json")));
}

TEST(CliTest, ConfigFileWithFlagOverride) {
  TempDir dir;
  WriteFile(dir.File("run.conf"),
            std::string("# sweep settings\n") + "synth = " + kSmallSynth +
                "\nstrategies = uniform\nrho-grid = 0,1\nseed = 4\nout = " +
                dir.File("from_conf") + "\n");
  ASSERT_EQ(RunCli({"sweep", "--config", dir.File("run.conf"), "--rho-grid", "0.5"}),
            kExitOk);
  const std::string csv = ReadFile(dir.File("from_conf/sweep.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_NE(csv.find("uniform,0.5,"), std::string::npos);
  const auto manifest =
      nlohmann::json::parse(ReadFile(dir.File("from_conf/manifest.json")));
  EXPECT_EQ(manifest["seed"], 4);
}

TEST(CliTest, ReportSplitsFigureFamilies) {
  TempDir dir;
  ASSERT_EQ(RunCli({"sweep", "--synth", kSmallSynth, "--rho-grid", "0:1:0.05",
                 "--out", dir.File("run")}),
            kExitOk);
  ASSERT_EQ(RunCli({"report", dir.File("run/sweep.csv"), "--out", dir.File("fig")}),
            kExitOk);
  for (const char* name :
       {"risk_vs_rho.csv", "utility_vs_rho.csv", "risk_increase_vs_rho.csv"}) {
    const std::string text = ReadFile(dir.File(std::string("fig/") + name));
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 63) << name;
  }
  const std::string utility = ReadFile(dir.File("fig/utility_vs_rho.csv"));
  EXPECT_EQ(utility.substr(0, utility.find('\n')),
            "strategy,rho,p_at_30,p_at_50,num_users_evaluated");
}

TEST(CliTest, ReportRejectsBadInput) {
  TempDir dir;
  WriteFile(dir.File("empty.csv"), SweepCsvHeader(std::vector<std::size_t>{30, 50}) + "\n");
  WriteFile(dir.File("wrong.csv"), "a,b,c\n1,2,3\n");
  ::testing::internal::CaptureStderr();
  EXPECT_EQ(RunCli({"report", dir.File("empty.csv"), "--out", dir.path()}), kExitData);
  EXPECT_EQ(RunCli({"report", dir.File("wrong.csv"), "--out", dir.path()}), kExitData);
  EXPECT_EQ(RunCli({"report", dir.File("nothing.csv"), "--out", dir.path()}), kExitData);
  ::testing::internal::GetCapturedStderr();
}

}  // namespace
}  // namespace tagforge::cli
