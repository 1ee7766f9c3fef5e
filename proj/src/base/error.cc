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

#include "disambig/base/error.h"

namespace disambig {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyLastName: return "EmptyLastName";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDuplicateRecordId: return "DuplicateRecordId";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kMissingSurvivorId: return "MissingSurvivorId";
    case ErrorCode::kOffsetOutOfBounds: return "OffsetOutOfBounds";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kEmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::kNonBinaryLabel: return "NonBinaryLabel";
    case ErrorCode::kLayoutMismatch: return "LayoutMismatch";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::kPartitionViolation: return "PartitionViolation";
    case ErrorCode::kMissingPrediction: return "MissingPrediction";
    case ErrorCode::kStageInputMissing: return "StageInputMissing";
    case ErrorCode::kConfigDigestMismatch: return "ConfigDigestMismatch";
    case ErrorCode::kUsage: return "Usage";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace disambig
