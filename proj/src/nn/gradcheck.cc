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

#include "disambig/nn/gradcheck.h"

#include <algorithm>
#include <cmath>

#include "disambig/base/error.h"
#include "disambig/base/rng.h"

namespace disambig::nn {
namespace {

// Distinct indices in [0, n), at most k of them, in ascending order.
std::vector<size_t> SampleIndices(size_t n, size_t k, Rng* rng) {
  std::vector<size_t> all(n);
  for (size_t i = 0; i < n; ++i) all[i] = i;
  if (k >= n) return all;
  // Partial Fisher-Yates.
  for (size_t i = 0; i < k; ++i) {
    const size_t j = i + rng->Uniform(n - i);
    std::swap(all[i], all[j]);
  }
  all.resize(k);
  std::ranges::sort(all);
  return all;
}

}  // namespace

GradCheckResult BackwardCheck(const Architecture& arch,
                              const Params<double>& params,
                              std::span<const double> input, int label,
                              double epsilon, uint64_t seed,
                              size_t min_samples) {
  if (!(epsilon >= 1e-6 && epsilon <= 1e-3)) {
    throw Error(ErrorCode::kInvalidConfig, "epsilon must lie in [1e-6, 1e-3]");
  }
  Workspace<double> ws;
  Params<double> analytic = ZeroParams<double>(arch);
  Forward<double>(arch, params, input, &ws);
  Backward<double>(arch, params, label, 1.0, &ws, &analytic);

  Params<double> probe = params;
  const auto loss_at = [&]() {
    Forward<double>(arch, probe, input, &ws);
    return CrossEntropy<double>(ws.probs, label);
  };

  const size_t n_layers = params.weights.size();
  // An even share per layer, capped by the layer's size; any shortfall goes
  // to layers with room to spare so that at least `min_samples` are checked.
  const size_t quota = (min_samples + n_layers - 1) / n_layers;
  std::vector<size_t> per_layer(n_layers);
  size_t planned = 0;
  for (size_t l = 0; l < n_layers; ++l) {
    const size_t cap = params.weights[l].size() + params.biases[l].size();
    per_layer[l] = std::min(cap, quota);
    planned += per_layer[l];
  }
  for (size_t l = 0; l < n_layers && planned < min_samples; ++l) {
    const size_t cap = params.weights[l].size() + params.biases[l].size();
    const size_t extra = std::min(cap - per_layer[l], min_samples - planned);
    per_layer[l] += extra;
    planned += extra;
  }
  Rng rng(seed);
  GradCheckResult result;
  result.checked_per_layer.assign(n_layers, 0);
  result.max_error_per_layer.assign(n_layers, 0.0);

  const auto check = [&](std::vector<double>& values,
                         const std::vector<double>& grads, size_t layer,
                         size_t count) {
    for (size_t idx : SampleIndices(values.size(), count, &rng)) {
      const double saved = values[idx];
      values[idx] = saved + epsilon;
      const double up = loss_at();
      values[idx] = saved - epsilon;
      const double down = loss_at();
      values[idx] = saved;
      const double numeric = (up - down) / (2.0 * epsilon);
      const double a = grads[idx];
      const double denom =
          std::max({std::abs(a), std::abs(numeric), kGradCheckFloor});
      const double err = std::abs(a - numeric) / denom;
      result.max_error_per_layer[layer] =
          std::max(result.max_error_per_layer[layer], err);
      result.max_relative_error = std::max(result.max_relative_error, err);
      ++result.checked_per_layer[layer];
      ++result.num_checked;
    }
  };

  for (size_t l = 0; l < n_layers; ++l) {
    // About a quarter biases, the rest weights.
    const size_t n_w = probe.weights[l].size();
    const size_t n_b = probe.biases[l].size();
    size_t n_bias = std::min(n_b, std::max<size_t>(1, per_layer[l] / 4));
    const size_t n_weight =
        std::min(n_w, per_layer[l] - std::min(per_layer[l], n_bias));
    n_bias = std::min(n_b, per_layer[l] - n_weight);
    check(probe.weights[l], analytic.weights[l], l, n_weight);
    check(probe.biases[l], analytic.biases[l], l, n_bias);
  }
  return result;
}

}  // namespace disambig::nn
