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

#ifndef DISAMBIG_SYNTH_H_
#define DISAMBIG_SYNTH_H_

#include <cstdint>

#include "disambig/ingest.h"

namespace disambig {

// Generator for labeled inventor corpora. Each entity gets a base profile;
// its records are perturbed copies of that profile.
struct SynthConfig {
  int n_entities = 200;
  int min_records_per_entity = 2;
  int max_records_per_entity = 5;

  // Per-record probabilities.
  double typo_rate = 0.15;              // one letter substituted or deleted
  double middle_initial_rate = 0.3;     // middle name cut to its initial
  double coinventor_reorder_rate = 0.5;
  double assignee_suffix_rate = 0.3;    // "INC", "PTY LTD", ... toggled
  double ipc_variation_rate = 0.3;      // a subset of the entity's IPC codes

  // Per-entity probabilities.
  double last_name_collision_rate = 0.2;  // reuse an earlier entity's surname
  double full_name_collision_rate = 0.05;  // ...and its first name too

  // Typos never touch this many leading letters of the last name, so that
  // same-entity records stay within one prefix block.
  int protected_prefix = 3;
};

// Pure function of (config, seed). Throws Error(kInvalidConfig).
LabeledCorpus GenerateSyntheticCorpus(const SynthConfig& config, uint64_t seed);

void ValidateSynthConfig(const SynthConfig& config);

}  // namespace disambig

#endif  // DISAMBIG_SYNTH_H_
