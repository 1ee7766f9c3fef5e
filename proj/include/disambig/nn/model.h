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

#ifndef DISAMBIG_NN_MODEL_H_
#define DISAMBIG_NN_MODEL_H_

#include <cstdint>
#include <string>

#include "disambig/nn/architecture.h"
#include "disambig/nn/network.h"

namespace disambig::nn {

inline constexpr uint32_t kModelFormatVersion = 1;

// Biases start slightly positive so that ReLU units begin active.
inline constexpr float kInitialBias = 0.01f;

struct ClassifierModel {
  Architecture arch;
  Params<float> params;
  std::string layout_name;
  std::string train_config_digest;

  bool operator==(const ClassifierModel&) const = default;
};

// He-uniform weights, U(-sqrt(6 / fan_in), +sqrt(6 / fan_in)).
Params<float> InitParams(const Architecture& arch, uint64_t seed);

// Throws Error(kIoError).
void SaveModel(const ClassifierModel& model, const std::string& path);

// Throws Error(kIoError), Error(kChecksumMismatch) for a damaged file, or
// Error(kVersionMismatch) for an unknown format version or weight shapes that
// contradict the stored architecture.
ClassifierModel LoadModel(const std::string& path);

// As above, and Error(kVersionMismatch) unless the stored architecture is
// `expected`.
ClassifierModel LoadModel(const std::string& path,
                          const Architecture& expected);

}  // namespace disambig::nn

#endif  // DISAMBIG_NN_MODEL_H_
