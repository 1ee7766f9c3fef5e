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

#include "disambig/tensor_io.h"

#include "disambig/base/binary_io.h"
#include "disambig/base/error.h"

namespace disambig {
namespace {

constexpr std::string_view kMagic = "DSTB";

}  // namespace

void WriteTensorBatch(const TensorBatch& batch, const std::string& path) {
  ByteWriter out;
  out.PutRaw(kMagic);
  out.Put<uint32_t>(kTensorFormatVersion);
  out.PutString(batch.layout_name);
  out.PutString(batch.digest);
  out.Put<uint32_t>(static_cast<uint32_t>(batch.width));
  out.Put<uint32_t>(static_cast<uint32_t>(batch.height));
  out.Put<uint64_t>(batch.entries.size());
  for (const TensorEntry& e : batch.entries) {
    if (e.tensor.width() != batch.width || e.tensor.height() != batch.height) {
      throw Error(ErrorCode::kShapeMismatch,
                  "pair " + std::to_string(e.pair_id) + " is " +
                      std::to_string(e.tensor.width()) + "x" +
                      std::to_string(e.tensor.height()) + " in a " +
                      std::to_string(batch.width) + "x" +
                      std::to_string(batch.height) + " batch");
    }
    out.Put<uint64_t>(e.pair_id);
    out.Put<int8_t>(static_cast<int8_t>(e.label));
    out.PutFloats(e.tensor.values());
  }
  out.WriteFileWithChecksum(path);
}

TensorBatch ReadTensorBatch(const std::string& path) {
  const std::string bytes = ReadFileVerifyChecksum(path);
  ByteReader in(bytes);
  if (in.Take(kMagic.size()) != kMagic) {
    throw Error(ErrorCode::kVersionMismatch, path + " is not a tensor batch");
  }
  const uint32_t version = in.Get<uint32_t>();
  if (version != kTensorFormatVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                path + " has tensor format " + std::to_string(version));
  }
  TensorBatch batch;
  batch.layout_name = in.GetString();
  batch.digest = in.GetString();
  batch.width = static_cast<int>(in.Get<uint32_t>());
  batch.height = static_cast<int>(in.Get<uint32_t>());
  const uint64_t count = in.Get<uint64_t>();
  batch.entries.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    TensorEntry e;
    e.pair_id = in.Get<uint64_t>();
    const int8_t label = in.Get<int8_t>();
    if (label < -1 || label > 1) {
      throw Error(ErrorCode::kChecksumMismatch,
                  path + ": bad label " + std::to_string(label));
    }
    e.label = static_cast<PairLabel>(label);
    e.tensor = ImageTensor(batch.width, batch.height);
    in.GetFloats(e.tensor.mutable_values());
    batch.entries.push_back(std::move(e));
  }
  if (!in.AtEnd()) {
    throw Error(ErrorCode::kChecksumMismatch, path + " has trailing data");
  }
  return batch;
}

}  // namespace disambig
