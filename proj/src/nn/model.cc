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

#include "disambig/nn/model.h"

#include <cmath>

#include "disambig/base/binary_io.h"
#include "disambig/base/error.h"
#include "disambig/base/rng.h"

namespace disambig::nn {
namespace {

constexpr std::string_view kMagic = "DSBM";

void PutArrays(const std::vector<std::vector<float>>& arrays,
               ByteWriter* out) {
  for (const auto& a : arrays) {
    out->Put<uint64_t>(a.size());
    out->PutFloats(a);
  }
}

void GetArrays(ByteReader* in, std::vector<std::vector<float>>* arrays,
               const std::string& path) {
  for (auto& a : *arrays) {
    const uint64_t n = in->Get<uint64_t>();
    if (n != a.size()) {
      throw Error(ErrorCode::kVersionMismatch,
                  path + ": weight array of " + std::to_string(n) +
                      " values, architecture expects " +
                      std::to_string(a.size()));
    }
    in->GetFloats(a);
  }
}

}  // namespace

Params<float> InitParams(const Architecture& arch, uint64_t seed) {
  Params<float> p = ZeroParams<float>(arch);
  Rng rng(seed);
  for (size_t layer = 0; layer < p.weights.size(); ++layer) {
    const size_t fan_out = p.biases[layer].size();
    const size_t fan_in = p.weights[layer].size() / fan_out;
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
    for (float& w : p.weights[layer]) {
      w = static_cast<float>((2.0 * rng.UniformDouble() - 1.0) * limit);
    }
    std::ranges::fill(p.biases[layer], kInitialBias);
  }
  return p;
}

void SaveModel(const ClassifierModel& model, const std::string& path) {
  ByteWriter out;
  out.PutRaw(kMagic);
  out.Put<uint32_t>(kModelFormatVersion);
  out.PutString(model.arch.Describe());
  out.PutString(model.layout_name);
  out.PutString(model.train_config_digest);
  out.Put<uint32_t>(static_cast<uint32_t>(model.params.weights.size()));
  PutArrays(model.params.weights, &out);
  PutArrays(model.params.biases, &out);
  out.WriteFileWithChecksum(path);
}

ClassifierModel LoadModel(const std::string& path) {
  const std::string bytes = ReadFileVerifyChecksum(path);
  ByteReader in(bytes);
  if (in.Take(kMagic.size()) != kMagic) {
    throw Error(ErrorCode::kVersionMismatch, path + " is not a model file");
  }
  const uint32_t version = in.Get<uint32_t>();
  if (version != kModelFormatVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                path + " has model format " + std::to_string(version) +
                    ", expected " + std::to_string(kModelFormatVersion));
  }
  ClassifierModel model;
  try {
    model.arch = Architecture::Parse(in.GetString());
    model.arch.Validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kVersionMismatch,
                path + " has an unusable architecture: " + e.what());
  }
  model.layout_name = in.GetString();
  model.train_config_digest = in.GetString();
  model.params = ZeroParams<float>(model.arch);
  const uint32_t n_layers = in.Get<uint32_t>();
  if (n_layers != model.params.weights.size()) {
    throw Error(ErrorCode::kVersionMismatch,
                path + " stores " + std::to_string(n_layers) + " layers");
  }
  GetArrays(&in, &model.params.weights, path);
  GetArrays(&in, &model.params.biases, path);
  if (!in.AtEnd()) {
    throw Error(ErrorCode::kVersionMismatch, path + " has trailing data");
  }
  return model;
}

ClassifierModel LoadModel(const std::string& path,
                          const Architecture& expected) {
  ClassifierModel model = LoadModel(path);
  if (!(model.arch == expected)) {
    throw Error(ErrorCode::kVersionMismatch,
                path + " holds architecture " + model.arch.Describe() +
                    ", expected " + expected.Describe());
  }
  return model;
}

}  // namespace disambig::nn
