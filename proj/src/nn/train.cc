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

#include "disambig/nn/train.h"

#include <cmath>
#include <limits>
#include <numeric>

#include "disambig/base/csv.h"
#include "disambig/base/error.h"
#include "disambig/base/rng.h"

namespace disambig::nn {
namespace {

constexpr uint64_t kShuffleStream = 0x9e3779b97f4a7c15ULL;

int LabelIndex(const TensorEntry& e) {
  switch (e.label) {
    case PairLabel::kMatch:
      return 1;
    case PairLabel::kNonMatch:
      return 0;
    case PairLabel::kUnknown:
      break;
  }
  throw Error(ErrorCode::kNonBinaryLabel,
              "pair " + std::to_string(e.pair_id) + " has no label");
}

void CheckEntries(std::span<const TensorEntry> entries,
                  const Architecture& arch) {
  for (const TensorEntry& e : entries) {
    LabelIndex(e);
    if (e.tensor.height() != arch.input.h || e.tensor.width() != arch.input.w) {
      throw Error(ErrorCode::kShapeMismatch,
                  "pair " + std::to_string(e.pair_id) + " does not fit " +
                      arch.Describe());
    }
  }
}

void SgdStep(const Params<float>& grads, const TrainConfig& cfg, double lr,
             Params<float>* params, Params<float>* velocity) {
  const auto update = [&](std::vector<float>& w, const std::vector<float>& g,
                          std::vector<float>* v, bool decay) {
    const float lr_f = static_cast<float>(lr);
    const float wd = decay ? static_cast<float>(cfg.weight_decay) : 0.0f;
    if (v == nullptr) {
      for (size_t i = 0; i < w.size(); ++i) w[i] -= lr_f * (g[i] + wd * w[i]);
      return;
    }
    const float m = static_cast<float>(cfg.momentum);
    for (size_t i = 0; i < w.size(); ++i) {
      (*v)[i] = m * (*v)[i] - lr_f * (g[i] + wd * w[i]);
      w[i] += (*v)[i];
    }
  };
  const bool use_velocity = cfg.momentum > 0.0;
  for (size_t l = 0; l < params->weights.size(); ++l) {
    update(params->weights[l], grads.weights[l],
           use_velocity ? &velocity->weights[l] : nullptr, true);
    update(params->biases[l], grads.biases[l],
           use_velocity ? &velocity->biases[l] : nullptr, false);
  }
}

}  // namespace

void TrainConfig::Validate() const {
  const auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidConfig, msg);
  };
  if (batch_size <= 0) fail("batch_size must be positive");
  if (epochs <= 0) fail("epochs must be positive");
  if (!(lr_start > lr_end && lr_end > 0.0)) {
    fail("learning rates need lr_start > lr_end > 0");
  }
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    fail("validation_fraction must lie in (0, 1)");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) fail("momentum must lie in [0, 1)");
  if (!(weight_decay >= 0.0)) fail("weight_decay must be non-negative");
}

double LrAt(int64_t step, int64_t total_steps, const TrainConfig& cfg) {
  const double t = static_cast<double>(step) / static_cast<double>(total_steps);
  const double s = 1.0 / (1.0 + std::exp(-kLrSteepness * (0.5 - t)));
  return cfg.lr_end + (cfg.lr_start - cfg.lr_end) * s;
}

void WriteTrainingReport(const TrainingReport& report, std::ostream& out) {
  out << "epoch,train_loss,val_loss,val_accuracy\n";
  char buf[128];
  for (const EpochStats& e : report.epochs) {
    std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.6f\n", e.epoch,
                  e.train_loss, e.val_loss, e.val_accuracy);
    out << buf;
  }
}

EvalStats Evaluate(const Architecture& arch, const Params<float>& params,
                   std::span<const TensorEntry> entries) {
  if (entries.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  Workspace<float> ws;
  double loss = 0.0;
  size_t correct = 0;
  for (const TensorEntry& e : entries) {
    const int label = LabelIndex(e);
    Forward<float>(arch, params, e.tensor.values(), &ws);
    loss += CrossEntropy<float>(ws.probs, label);
    const int predicted = ws.probs[1] > ws.probs[0] ? 1 : 0;
    if (predicted == label) ++correct;
  }
  const auto n = static_cast<double>(entries.size());
  return {loss / n, static_cast<double>(correct) / n};
}

TrainResult Train(std::span<const TensorEntry> train,
                  std::span<const TensorEntry> validation,
                  const TrainConfig& cfg, const Architecture& arch,
                  const std::string& layout_name) {
  cfg.Validate();
  arch.Validate();
  if (train.empty()) {
    throw Error(ErrorCode::kEmptyTrainingSet, "no training pairs");
  }
  CheckEntries(train, arch);
  CheckEntries(validation, arch);

  TrainResult result;
  result.model.arch = arch;
  result.model.layout_name = layout_name;
  Params<float>& params = result.model.params;
  params = InitParams(arch, cfg.seed);
  Params<float> grads = ZeroParams<float>(arch);
  Params<float> velocity = ZeroParams<float>(arch);

  Rng shuffle_rng(cfg.seed ^ kShuffleStream);
  std::vector<size_t> order(train.size());
  const auto batch = static_cast<size_t>(cfg.batch_size);
  const int64_t steps_per_epoch =
      static_cast<int64_t>((train.size() + batch - 1) / batch);
  const int64_t total_steps = steps_per_epoch * cfg.epochs;
  int64_t step = 0;
  Workspace<float> ws;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), size_t{0});
    shuffle_rng.Shuffle(std::span<size_t>(order));
    double loss_sum = 0.0;
    for (size_t start = 0; start < order.size(); start += batch) {
      const size_t end = std::min(order.size(), start + batch);
      const float scale = 1.0f / static_cast<float>(end - start);
      grads.SetZero();
      for (size_t k = start; k < end; ++k) {
        const TensorEntry& e = train[order[k]];
        const int label = LabelIndex(e);
        Forward<float>(arch, params, e.tensor.values(), &ws);
        loss_sum += CrossEntropy<float>(ws.probs, label);
        Backward<float>(arch, params, label, scale, &ws, &grads);
      }
      SgdStep(grads, cfg, LrAt(step, total_steps, cfg), &params, &velocity);
      ++step;
    }
    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = loss_sum / static_cast<double>(train.size());
    const EvalStats val = Evaluate(arch, params, validation);
    stats.val_loss = val.loss;
    stats.val_accuracy = val.accuracy;
    result.report.epochs.push_back(stats);
  }
  return result;
}

TrainResult TrainWithHoldout(std::span<const TensorEntry> pairs,
                             const TrainConfig& cfg, const Architecture& arch,
                             const std::string& layout_name) {
  cfg.Validate();
  std::vector<size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(cfg.seed);
  rng.Shuffle(std::span<size_t>(order));
  const auto n_val = static_cast<size_t>(
      std::floor(cfg.validation_fraction * static_cast<double>(pairs.size())));
  std::vector<TensorEntry> train;
  std::vector<TensorEntry> validation;
  for (size_t k = 0; k < order.size(); ++k) {
    (k < n_val ? validation : train).push_back(pairs[order[k]]);
  }
  return Train(train, validation, cfg, arch, layout_name);
}

}  // namespace disambig::nn
