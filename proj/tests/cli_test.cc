/*
 * Copyright 2026 The woe-explain Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "woe/dataset.h"
#include "woe/explanation_json.h"
#include "woe/model_io.h"

namespace woe {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;
using ::testing::IsEmpty;
using ::testing::StartsWith;

struct RunResult {
  int code = -1;
  std::string output;  // stdout and stderr
};

RunResult RunCli(const std::string& args) {
  const std::string cmd = std::string(WOE_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Six well separated classes: unit noise around means drawn from N(0, 5^2).
Dataset SeparatedData() {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 1.0);
  constexpr int kClasses = 6, kDim = 4, kRows = 600;
  Eigen::MatrixXd means(kClasses, kDim);
  for (int c = 0; c < kClasses; ++c) {
    for (int j = 0; j < kDim; ++j) means(c, j) = 5.0 * normal(rng);
  }
  RowMatrix x(kRows, kDim);
  std::vector<int> labels(kRows);
  for (int i = 0; i < kRows; ++i) {
    labels[i] = i % kClasses;
    for (int j = 0; j < kDim; ++j) x(i, j) = means(labels[i], j) + normal(rng);
  }
  return Dataset(std::move(x), std::move(labels), {"x0", "x1", "x2", "x3"},
                 {"c0", "c1", "c2", "c3", "c4", "c5"});
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("woe_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    save_csv(SeparatedData(), dir_ / "data.csv");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, TrainWritesLoadableModel) {
  const RunResult r = RunCli("train --model gnb --data " + P("data.csv") +
                          " --out " + P("m.json"));
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_THAT(r.output, HasSubstr("training accuracy: "));
  const std::string key = "training accuracy: ";
  const double acc = std::stod(r.output.substr(r.output.find(key) + key.size()));
  EXPECT_GT(acc, 0.95);
  const ModelHandle m = load_model(P("m.json"));
  EXPECT_EQ(m.type_name(), "gnb");
  EXPECT_EQ(m.num_classes(), 6);
}

TEST_F(CliTest, TrainEveryModelType) {
  for (const char* type : {"lda", "qda"}) {
    const RunResult r = RunCli(std::string("train --model ") + type + " --data " +
                            P("data.csv") + " --out " + P("m.json"));
    EXPECT_EQ(r.code, 0) << type << ": " << r.output;
    EXPECT_EQ(load_model(P("m.json")).type_name(), type);
  }
  // Logistic needs two classes.
  const RunResult r = RunCli("train --model logistic --data " + P("data.csv") +
                          " --out " + P("m.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_THAT(r.output, HasSubstr("error"));
}

TEST_F(CliTest, ExplainSequentialAndOneShot) {
  ASSERT_EQ(RunCli("train --model gnb --data " + P("data.csv") + " --out " +
                P("m.json"))
                .code,
            0);
  const RunResult seq = RunCli("explain --model " + P("m.json") + " --data " +
                            P("data.csv") + " --row 3 --out " + P("seq.json") +
                            " --svg " + P("seq.svg"));
  ASSERT_EQ(seq.code, 0) << seq.output;
  const nlohmann::json j = nlohmann::json::parse(ReadFile(P("seq.json")));
  EXPECT_THAT(validate_explanation_json(j), IsEmpty());
  EXPECT_GE(j["steps"].size(), 1u);
  EXPECT_EQ(j["steps"].back()["kept"].size(), 1u);
  EXPECT_THAT(ReadFile(P("seq.svg")), StartsWith("<svg"));

  const RunResult one = RunCli("explain --model " + P("m.json") +
                            " --instance [0.5,-1,2,0] --mode oneshot");
  ASSERT_EQ(one.code, 0) << one.output;
  const nlohmann::json o = nlohmann::json::parse(one.output);
  EXPECT_EQ(o["steps"].size(), 1u);
  EXPECT_EQ(o["steps"][0]["kept"].size(), 1u);
  EXPECT_EQ(o["steps"][0]["ruled_out"].size(), 5u);
}

TEST_F(CliTest, ExplainWithPartitionFile) {
  ASSERT_EQ(RunCli("train --model gnb --data " + P("data.csv") + " --out " +
                P("m.json"))
                .code,
            0);
  std::ofstream(P("parts.json"))
      << R"({"halves": {"a": ["x0", "x1"], "b": ["x2"]}})";
  const RunResult r = RunCli("explain --model " + P("m.json") + " --data " +
                          P("data.csv") + " --row 0 --partition " +
                          P("parts.json") + " --partition-name halves");
  ASSERT_EQ(r.code, 0) << r.output;
  const auto start = r.output.find('{');
  const nlohmann::json j = nlohmann::json::parse(r.output.substr(start));
  // x3 is unlisted and lands in "other".
  EXPECT_EQ(j["steps"][0]["atoms"].size(), 3u);
  EXPECT_EQ(j["partition_name"], "halves");
}

TEST_F(CliTest, SurrogateRoundTrip) {
  ASSERT_EQ(RunCli("train --model qda --data " + P("data.csv") + " --out " +
                P("m.json"))
                .code,
            0);
  const RunResult fit = RunCli("surrogate-fit --model " + P("m.json") +
                            " --data " + P("data.csv") + " --out " +
                            P("s.json"));
  ASSERT_EQ(fit.code, 0) << fit.output;
  const RunResult r = RunCli("explain --model " + P("m.json") + " --surrogate " +
                          P("s.json") + " --data " + P("data.csv") +
                          " --row 7 --out " + P("e.json"));
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_THAT(
      validate_explanation_json(nlohmann::json::parse(ReadFile(P("e.json")))),
      IsEmpty());
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(RunCli("").code, 2);
  EXPECT_EQ(RunCli("frobnicate").code, 2);
  EXPECT_EQ(RunCli("train --model forest --data x.csv --out m.json").code, 2);
  EXPECT_EQ(RunCli("train --data x.csv").code, 2);
  EXPECT_EQ(RunCli("explain --model m.json --row 1 --instance [1]").code, 2);
  EXPECT_EQ(RunCli("--help").code, 0);
}

TEST_F(CliTest, RuntimeErrorsExitOne) {
  const RunResult missing = RunCli("train --model gnb --data " + P("nope.csv") +
                                " --out " + P("m.json"));
  EXPECT_EQ(missing.code, 1);
  EXPECT_THAT(missing.output, HasSubstr("nope.csv"));
  ASSERT_EQ(RunCli("train --model gnb --data " + P("data.csv") + " --out " +
                P("m.json"))
                .code,
            0);
  EXPECT_EQ(RunCli("explain --model " + P("m.json") + " --data " + P("data.csv") +
                " --row 100000")
                .code,
            1);
}

TEST_F(CliTest, BenchmarksWriteReports) {
  const RunResult est = RunCli(
      "bench-estimation --dims 3 --n-fits 50,500 --n-train 200 --n-test 4 "
      "--seeds 2 --csv " + P("e.csv") + " --json " + P("e.json") + " --plot " +
      P("e.svg"));
  ASSERT_EQ(est.code, 0) << est.output;
  EXPECT_THAT(ReadFile(P("e.csv")), StartsWith("d,n_fit,seed,metric,value\n"));
  EXPECT_EQ(nlohmann::json::parse(ReadFile(P("e.json")))["cells"].size(), 4u);
  EXPECT_THAT(ReadFile(P("e.svg")), StartsWith("<svg"));

  const RunResult rob = RunCli(
      "bench-robustness --dim 3 --classes 2 --n-samples 100 --seeds 2 "
      "--n-instances 2 --budget 12 --refine-steps 2 --csv " + P("r.csv") +
      " --plot " + P("r.svg"));
  ASSERT_EQ(rob.code, 0) << rob.output;
  EXPECT_THAT(ReadFile(P("r.csv")),
              StartsWith("dataset,row,seed,metric,value\n"));
  EXPECT_THAT(ReadFile(P("r.svg")), HasSubstr("synthetic_d3_k2"));
}

}  // namespace
}  // namespace woe
