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

#ifndef DISAMBIG_NN_GRADCHECK_H_
#define DISAMBIG_NN_GRADCHECK_H_

#include <cstdint>
#include <span>
#include <vector>

#include "disambig/nn/architecture.h"
#include "disambig/nn/network.h"

namespace disambig::nn {

// Values whose gradients are both smaller than this are compared absolutely.
inline constexpr double kGradCheckFloor = 1e-8;

struct GradCheckResult {
  double max_relative_error = 0.0;
  size_t num_checked = 0;
  std::vector<size_t> checked_per_layer;
  std::vector<double> max_error_per_layer;
};

// Compares analytic gradients of the cross-entropy loss against central
// differences in double precision, on a seeded sample of at least
// `min_samples` parameters drawn from every layer (weights and biases).
// Relative error is |a - n| / max(|a|, |n|, kGradCheckFloor).
// Throws Error(kInvalidConfig) unless epsilon lies in [1e-6, 1e-3].
GradCheckResult BackwardCheck(const Architecture& arch,
                              const Params<double>& params,
                              std::span<const double> input, int label,
                              double epsilon, uint64_t seed,
                              size_t min_samples = 200);

}  // namespace disambig::nn

#endif  // DISAMBIG_NN_GRADCHECK_H_
