// Copyright 2026 The Disambig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "disambig/base/csv.h"
#include "disambig/base/error.h"
#include "disambig/ingest.h"
#include "disambig/pipeline/config.h"
#include "disambig/pipeline/stages.h"
#include "test_util.h"

namespace disambig::pipeline {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIoError;
}

// A run small enough for a unit test.
PipelineConfig SmallConfig(const std::string& dir) {
  PipelineConfig c;
  c.output_dir = dir;
  c.synth.n_entities = 16;
  c.layout = "small-maps";
  c.train.epochs = 2;
  c.train.batch_size = 20;
  return c;
}

TEST(ConfigTest, SettingsApply) {
  PipelineConfig c;
  ApplySetting("p_bar=0.05", &c);
  ApplySetting(" l_bar = 0.2 ", &c);
  ApplySetting("layout=no-blue", &c);
  ApplySetting("train.momentum=0.9", &c);
  ApplySetting("eval.all_pairs=true", &c);
  ApplySetting("sweep.p_bar=0.02, 0.03", &c);
  EXPECT_EQ(c.cluster.p_bar, 0.05);
  EXPECT_EQ(c.cluster.l_bar, 0.2);
  EXPECT_EQ(c.layout, "no-blue");
  EXPECT_EQ(c.train.momentum, 0.9);
  EXPECT_TRUE(c.eval_all_pairs);
  EXPECT_EQ(c.sweep_p_bar, (std::vector<double>{0.02, 0.03}));
}

TEST(ConfigTest, BadSettingsAreUsageErrors) {
  PipelineConfig c;
  for (const char* bad : {"p_bar", "nosuch=1", "p_bar=abc", "p_bar=0.1x",
                          "train.epochs=2.5", "eval.all_pairs=maybe",
                          "sweep.p_bar=0.1,,0.2"}) {
    EXPECT_EQ(CodeOf([&] { ApplySetting(bad, &c); }), ErrorCode::kUsage)
        << bad;
  }
}

TEST(ConfigTest, ValidateMapsDomainErrorsToUsage) {
  const auto invalid = [](const char* setting) {
    PipelineConfig c;
    ApplySetting(setting, &c);
    return CodeOf([&] { c.Validate(); });
  };
  EXPECT_EQ(invalid("p_bar=1.5"), ErrorCode::kUsage);
  EXPECT_EQ(invalid("l_bar=0"), ErrorCode::kUsage);
  EXPECT_EQ(invalid("max_block_size=1"), ErrorCode::kUsage);
  EXPECT_EQ(invalid("train.epochs=0"), ErrorCode::kUsage);
  EXPECT_EQ(invalid("split.train_fraction=1"), ErrorCode::kUsage);
  EXPECT_EQ(invalid("sweep.p_bar=0.1"), ErrorCode::kUsage);
  EXPECT_EQ(invalid("output_dir="), ErrorCode::kUsage);
  EXPECT_NO_THROW(PipelineConfig{}.Validate());
}

TEST(ConfigTest, FileWithCommentsAndLineNumbers) {
  TempDir tmp;
  {
    std::ofstream f(tmp.File("a.conf"));
    f << "# comment\n\np_bar=0.04  # trailing\nlayout=small-maps\n";
  }
  PipelineConfig c;
  ApplyConfigFile(tmp.File("a.conf"), &c);
  EXPECT_EQ(c.cluster.p_bar, 0.04);
  EXPECT_EQ(c.layout, "small-maps");
  {
    std::ofstream f(tmp.File("b.conf"));
    f << "p_bar=0.04\nbogus=1\n";
  }
  try {
    ApplyConfigFile(tmp.File("b.conf"), &c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUsage);
    EXPECT_NE(std::string(e.what()).find("b.conf:2"), std::string::npos);
  }
}

TEST(ConfigTest, DescribeRoundTrips) {
  PipelineConfig c;
  ApplySetting("p_bar=0.0123456789", &c);
  ApplySetting("sweep.p_bar=0.02,0.03", &c);
  ApplySetting("sweep.l_bar=0.05", &c);
  ApplySetting("input=x.jsonl", &c);
  const std::string text = DescribeConfig(c);
  PipelineConfig back;
  for (const std::string& line : SplitString(text, '\n')) {
    if (!line.empty()) ApplySetting(line, &back);
  }
  EXPECT_EQ(DescribeConfig(back), text);
  EXPECT_NE(text.find("\np_bar=0.0123456789\n"), std::string::npos);
}

TEST(ConfigTest, ShippedConfigsParse) {
  for (const auto& entry :
       fs::directory_iterator(fs::path(DISAMBIG_SOURCE_DIR) / "configs")) {
    PipelineConfig c;
    EXPECT_NO_THROW(ApplyConfigFile(entry.path().string(), &c))
        << entry.path();
    EXPECT_NO_THROW(c.Validate()) << entry.path();
  }
}

TEST(StageTest, MissingInputs) {
  TempDir tmp;
  const PipelineConfig c = SmallConfig(tmp.path());
  std::ostringstream log;
  EXPECT_EQ(CodeOf([&] { RunStage("dedup", c, log); }),
            ErrorCode::kStageInputMissing);
  RunStage("synth", c, log);
  EXPECT_EQ(CodeOf([&] { RunStage("block", c, log); }),
            ErrorCode::kStageInputMissing);
  RunStage("dedup", c, log);
  EXPECT_EQ(CodeOf([&] { RunStage("train", c, log); }),
            ErrorCode::kStageInputMissing);
  EXPECT_EQ(CodeOf([&] { RunStage("cluster", c, log); }),
            ErrorCode::kStageInputMissing);
  EXPECT_EQ(CodeOf([&] { RunStage("nosuch", c, log); }), ErrorCode::kUsage);
}

TEST(StageTest, ChangedLayoutInvalidatesDownstream) {
  TempDir tmp;
  PipelineConfig c = SmallConfig(tmp.path());
  std::ostringstream log;
  for (const char* stage : {"synth", "dedup", "block", "render"}) {
    RunStage(stage, c, log);
  }
  c.layout = "heuristic";
  EXPECT_EQ(CodeOf([&] { RunStage("train", c, log); }),
            ErrorCode::kConfigDigestMismatch);
  // Upstream of render nothing changed.
  EXPECT_NO_THROW(RunStage("block", c, log));
  RunStage("render", c, log);
  EXPECT_NO_THROW(RunStage("train", c, log));
}

TEST(StageTest, ChangedThresholdInvalidatesEvaluate) {
  TempDir tmp;
  PipelineConfig c = SmallConfig(tmp.path());
  std::ostringstream log;
  RunPipeline(c, log);
  c.cluster.p_bar = 0.5;
  EXPECT_EQ(CodeOf([&] { RunStage("evaluate", c, log); }),
            ErrorCode::kConfigDigestMismatch);
  RunStage("cluster", c, log);
  EXPECT_NO_THROW(RunStage("evaluate", c, log));
}

TEST(StageTest, PipelineWritesEveryArtifact) {
  TempDir tmp;
  PipelineConfig c = SmallConfig(tmp.path());
  c.png_samples = 3;
  ApplySetting("sweep.p_bar=0.03,0.5", &c);
  ApplySetting("sweep.l_bar=0.05", &c);
  std::ostringstream log;
  RunPipeline(c, log);
  for (const char* name :
       {"corpus.jsonl", "dedup.csv", "blocks.csv", "block_stats.csv",
        "pairs.bin", "tensors.bin", "model.bin", "train_report.csv",
        "probs.csv", "asymmetry.csv", "assignment.csv", "metrics.txt",
        "sweep.csv"}) {
    EXPECT_TRUE(fs::exists(tmp.File(name))) << name;
  }
  EXPECT_EQ(std::distance(fs::directory_iterator(tmp.File("png")),
                          fs::directory_iterator()),
            3);
  EXPECT_NE(log.str().find("order asymmetry"), std::string::npos);

  // Every record of the corpus has a uid; uids carry their partition.
  const auto assignment = ReadAssignment(tmp.File("assignment.csv"));
  const LabeledCorpus corpus = LoadCorpus(tmp.File("corpus.jsonl"),
                                          CorpusFormat::kJsonLines);
  EXPECT_EQ(assignment.size(), corpus.records.size());
  for (const auto& [id, uid] : assignment) {
    const std::string part = uid.substr(0, uid.find('/'));
    EXPECT_TRUE(part == "train" || part == "validation" || part == "test")
        << uid;
  }
}

TEST(StageTest, RunsAreByteIdentical) {
  TempDir a, b;
  std::ostringstream log;
  RunPipeline(SmallConfig(a.path()), log);
  RunPipeline(SmallConfig(b.path()), log);
  for (const char* name : {"assignment.csv", "probs.csv", "metrics.txt"}) {
    EXPECT_EQ(ReadFileOrThrow(a.File(name)), ReadFileOrThrow(b.File(name)))
        << name;
  }
}

TEST(PairFileTest, RoundTripAndCorruption) {
  TempDir tmp;
  const std::vector<PairRow> rows = {
      {0, "train", "BRO", "a", "b", PairLabel::kMatch},
      {7, "test", "SMI,J", "c", "d", PairLabel::kUnknown}};
  WritePairFile(tmp.File("p.bin"), "abc", rows);
  std::string digest;
  EXPECT_EQ(ReadPairFile(tmp.File("p.bin"), &digest), rows);
  EXPECT_EQ(digest, "abc");
  std::string bytes = ReadFileOrThrow(tmp.File("p.bin"));
  bytes[bytes.size() / 2] ^= 0x40;
  std::ofstream(tmp.File("p.bin"), std::ios::binary) << bytes;
  EXPECT_EQ(CodeOf([&] { ReadPairFile(tmp.File("p.bin"), &digest); }),
            ErrorCode::kChecksumMismatch);
}

int RunCli(const std::string& args) {
  const std::string cmd =
      std::string(DISAMBIG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliTest, ExitCodes) {
  TempDir tmp;
  const std::string out = " --set output_dir=" + tmp.path();
  EXPECT_EQ(RunCli("show-config"), 0);
  EXPECT_EQ(RunCli(""), 1);
  EXPECT_EQ(RunCli("frobnicate"), 1);
  EXPECT_EQ(RunCli("show-config --set nosuch=1"), 1);
  EXPECT_EQ(RunCli("show-config --set p_bar=2"), 1);
  EXPECT_EQ(RunCli("show-config --config " + tmp.File("absent.conf")), 1);
  EXPECT_EQ(RunCli("block" + out), 2);
  EXPECT_EQ(RunCli("synth --set synth.entities=5" + out), 0);
  EXPECT_TRUE(fs::exists(tmp.File("corpus.jsonl")));
  EXPECT_EQ(RunCli("block" + out + " --set synth.entities=5"), 2);
  EXPECT_EQ(RunCli("dedup" + out), 0);
}

}  // namespace
}  // namespace disambig::pipeline
