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

#ifndef DISAMBIG_NN_PREDICT_H_
#define DISAMBIG_NN_PREDICT_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "disambig/image.h"
#include "disambig/nn/model.h"
#include "disambig/tensor_io.h"

namespace disambig::nn {

// (p_nonmatch, p_match) per input. Inputs are independent, so they are
// evaluated in parallel. Throws Error(kShapeMismatch).
std::vector<std::array<float, 2>> ForwardBatch(
    const ClassifierModel& model, std::span<const ImageTensor> batch);

struct PairProbability {
  uint64_t pair_id = 0;
  double p_match = 0.0;

  bool operator==(const PairProbability&) const = default;
};

// One probability per entry, in batch order. Throws Error(kLayoutMismatch)
// when the batch was rendered under a different layout than the model was
// trained on, or Error(kShapeMismatch).
std::vector<PairProbability> PredictPairs(const ClassifierModel& model,
                                          const TensorBatch& batch);

}  // namespace disambig::nn

#endif  // DISAMBIG_NN_PREDICT_H_
