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

// Pipeline stages. Each stage reads the artifacts of earlier stages from the
// output directory and writes its own. Every artifact carries the digest of
// the configuration chain that produced it; a stage refuses inputs whose
// digest differs from the one the current configuration implies.
//
//   synth     corpus.jsonl
//   dedup     dedup.csv        partition and survivor of every record
//   block     blocks.csv, block_stats.csv, pairs.bin
//   render    tensors.bin (and png/ samples)
//   train     model.bin, train_report.csv
//   infer     probs.csv, asymmetry.csv  p(a,b) against p(b,a) for a sample
//   cluster   assignment.csv
//   evaluate  metrics.txt (and sweep.csv)

#ifndef DISAMBIG_PIPELINE_STAGES_H_
#define DISAMBIG_PIPELINE_STAGES_H_

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "disambig/pipeline/config.h"
#include "disambig/tensor_io.h"

namespace disambig::pipeline {

inline constexpr std::array<std::string_view, 8> kStageNames = {
    "synth", "dedup", "block", "render", "train", "infer", "cluster",
    "evaluate"};

inline constexpr std::array<std::string_view, 4> kPartitions = {
    "train", "validation", "test", "bulk"};

// Digest each stage stamps on its outputs. Each one folds in its
// predecessor, so a change anywhere upstream changes everything after it.
struct StageDigests {
  std::string corpus;
  std::string dedup;
  std::string block;
  std::string render;
  std::string train;
  std::string infer;
  std::string cluster;
  std::string evaluate;
};

// Throws Error(kStageInputMissing) when the corpus does not exist.
StageDigests ComputeDigests(const PipelineConfig& config);

struct PairRow {
  uint64_t pair_id = 0;
  std::string partition;
  std::string block_key;
  std::string a;  // a < b
  std::string b;
  PairLabel label = PairLabel::kUnknown;

  bool operator==(const PairRow&) const = default;
};

void WritePairFile(const std::string& path, const std::string& digest,
                   const std::vector<PairRow>& pairs);
// Returns the stored digest through `digest`.
std::vector<PairRow> ReadPairFile(const std::string& path,
                                  std::string* digest);

// record_id -> uid from assignment.csv.
std::map<std::string, std::string> ReadAssignment(const std::string& path);

void RunSynth(const PipelineConfig& config, std::ostream& log);
void RunDedup(const PipelineConfig& config, std::ostream& log);
void RunBlock(const PipelineConfig& config, std::ostream& log);
void RunRender(const PipelineConfig& config, std::ostream& log);
void RunTrain(const PipelineConfig& config, std::ostream& log);
void RunInfer(const PipelineConfig& config, std::ostream& log);
void RunCluster(const PipelineConfig& config, std::ostream& log);
void RunEvaluate(const PipelineConfig& config, std::ostream& log);

// Runs one stage by name. Throws Error(kUsage) for an unknown name.
void RunStage(std::string_view name, const PipelineConfig& config,
              std::ostream& log);

// synth (only when no input corpus is configured), then dedup to evaluate.
void RunPipeline(const PipelineConfig& config, std::ostream& log);

}  // namespace disambig::pipeline

#endif  // DISAMBIG_PIPELINE_STAGES_H_
