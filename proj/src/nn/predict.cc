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

#include "disambig/nn/predict.h"

#include <cstddef>

#include "disambig/base/error.h"
#include "disambig/nn/network.h"

namespace disambig::nn {
namespace {

template <typename Get>
std::vector<std::array<float, 2>> RunBatch(const ClassifierModel& model,
                                           size_t n, Get get_values) {
  const Architecture& arch = model.arch;
  std::vector<std::array<float, 2>> out(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    Workspace<float> ws;
#pragma omp for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      Forward<float>(arch, model.params, get_values(i), &ws);
      out[i] = {ws.probs[0], ws.probs[1]};
    }
  }
  return out;
}

void CheckShape(const Architecture& arch, int width, int height) {
  if (width != arch.input.w || height != arch.input.h) {
    throw Error(ErrorCode::kShapeMismatch,
                std::to_string(width) + "x" + std::to_string(height) +
                    " input does not fit " + arch.Describe());
  }
}

}  // namespace

std::vector<std::array<float, 2>> ForwardBatch(
    const ClassifierModel& model, std::span<const ImageTensor> batch) {
  for (const ImageTensor& t : batch) {
    CheckShape(model.arch, t.width(), t.height());
  }
  return RunBatch(model, batch.size(),
                  [&](std::ptrdiff_t i) { return batch[i].values(); });
}

std::vector<PairProbability> PredictPairs(const ClassifierModel& model,
                                          const TensorBatch& batch) {
  if (batch.layout_name != model.layout_name) {
    throw Error(ErrorCode::kLayoutMismatch,
                "model was trained on layout '" + model.layout_name +
                    "', pairs were rendered with '" + batch.layout_name + "'");
  }
  CheckShape(model.arch, batch.width, batch.height);
  for (const TensorEntry& e : batch.entries) {
    CheckShape(model.arch, e.tensor.width(), e.tensor.height());
  }
  const auto probs = RunBatch(model, batch.entries.size(), [&](std::ptrdiff_t i) {
    return batch.entries[i].tensor.values();
  });
  std::vector<PairProbability> out;
  out.reserve(probs.size());
  for (size_t i = 0; i < probs.size(); ++i) {
    out.push_back({batch.entries[i].pair_id, probs[i][1]});
  }
  return out;
}

}  // namespace disambig::nn
