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

#ifndef DISAMBIG_PIPELINE_CONFIG_H_
#define DISAMBIG_PIPELINE_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "disambig/blocking.h"
#include "disambig/cluster.h"
#include "disambig/eval.h"
#include "disambig/nn/train.h"
#include "disambig/synth.h"

namespace disambig::pipeline {

struct PipelineConfig {
  // Corpus to disambiguate. Empty means <output_dir>/corpus.jsonl, which the
  // synth stage writes.
  std::string input;
  std::string output_dir = "out";

  SynthConfig synth;
  uint64_t synth_seed = 7;

  std::string layout = "heuristic";
  std::string layout_file;   // empty: built-in registry
  std::string architecture;  // empty: reference network for the canvas
  int max_block_size = kDefaultMaxBlockSize;

  SplitSpec split;
  nn::TrainConfig train;
  ClusterParams cluster;

  bool eval_all_pairs = false;
  std::vector<double> sweep_p_bar;
  std::vector<double> sweep_l_bar;

  int png_samples = 0;  // render writes this many comparison maps as PNG
  int workers = 0;      // 0: OpenMP default

  std::string CorpusPath() const;
  std::string ArtifactPath(std::string_view name) const;

  // Throws Error(kUsage) for out-of-domain values.
  void Validate() const;
};

// Applies one "key=value" assignment. Throws Error(kUsage) for unknown keys
// or unparsable values.
void ApplySetting(std::string_view assignment, PipelineConfig* config);

// Reads key=value lines; '#' starts a comment. Throws Error(kUsage), or
// Error(kIoError) when the file cannot be read.
void ApplyConfigFile(const std::string& path, PipelineConfig* config);

// Every recognised key with its current value, one "key=value" per line.
std::string DescribeConfig(const PipelineConfig& config);

}  // namespace disambig::pipeline

#endif  // DISAMBIG_PIPELINE_CONFIG_H_
