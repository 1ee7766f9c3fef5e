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

#ifndef DISAMBIG_NN_TRAIN_H_
#define DISAMBIG_NN_TRAIN_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "disambig/nn/model.h"
#include "disambig/tensor_io.h"

namespace disambig::nn {

inline constexpr double kLrSteepness = 12.0;

struct TrainConfig {
  int batch_size = 100;
  int epochs = 30;
  double lr_start = 0.01;
  double lr_end = 0.001;
  uint64_t seed = 1;
  double validation_fraction = 0.25;
  double momentum = 0.0;
  double weight_decay = 0.0;

  // Throws Error(kInvalidConfig).
  void Validate() const;
};

// Sigmoid decay from lr_start to lr_end:
// lr_end + (lr_start - lr_end) * sigmoid(k * (1/2 - step / total_steps)).
double LrAt(int64_t step, int64_t total_steps, const TrainConfig& cfg);

struct EpochStats {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_loss = 0.0;      // NaN without a validation set
  double val_accuracy = 0.0;  // NaN without a validation set
};

struct TrainingReport {
  std::vector<EpochStats> epochs;
};

void WriteTrainingReport(const TrainingReport& report, std::ostream& out);

struct TrainResult {
  ClassifierModel model;
  TrainingReport report;
};

// Mini-batch SGD on the cross-entropy loss. Sample order is reshuffled every
// epoch from cfg.seed; weights are initialised from the same seed. Throws
// Error(kEmptyTrainingSet) or Error(kNonBinaryLabel).
TrainResult Train(std::span<const TensorEntry> train,
                  std::span<const TensorEntry> validation,
                  const TrainConfig& cfg, const Architecture& arch,
                  const std::string& layout_name);

// Holds out cfg.validation_fraction of `pairs` (seeded) and trains on the
// rest.
TrainResult TrainWithHoldout(std::span<const TensorEntry> pairs,
                             const TrainConfig& cfg, const Architecture& arch,
                             const std::string& layout_name);

// Mean loss and accuracy of `params` on labeled entries.
struct EvalStats {
  double loss = 0.0;
  double accuracy = 0.0;
};
EvalStats Evaluate(const Architecture& arch, const Params<float>& params,
                   std::span<const TensorEntry> entries);

}  // namespace disambig::nn

#endif  // DISAMBIG_NN_TRAIN_H_
