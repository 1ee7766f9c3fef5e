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

#ifndef DISAMBIG_TENSOR_IO_H_
#define DISAMBIG_TENSOR_IO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "disambig/image.h"

namespace disambig {

inline constexpr uint32_t kTensorFormatVersion = 1;

enum class PairLabel : int8_t { kUnknown = -1, kNonMatch = 0, kMatch = 1 };

struct TensorEntry {
  uint64_t pair_id = 0;
  PairLabel label = PairLabel::kUnknown;
  ImageTensor tensor;

  bool operator==(const TensorEntry&) const = default;
};

// Comparison maps rendered under one layout.
struct TensorBatch {
  std::string layout_name;
  std::string digest;  // digest of the configuration that produced the batch
  int width = 0;
  int height = 0;
  std::vector<TensorEntry> entries;

  bool operator==(const TensorBatch&) const = default;
};

// Throws Error(kShapeMismatch) if an entry's size differs from the batch's,
// or Error(kIoError).
void WriteTensorBatch(const TensorBatch& batch, const std::string& path);

// Throws Error(kIoError), Error(kChecksumMismatch) or
// Error(kVersionMismatch).
TensorBatch ReadTensorBatch(const std::string& path);

}  // namespace disambig

#endif  // DISAMBIG_TENSOR_IO_H_
