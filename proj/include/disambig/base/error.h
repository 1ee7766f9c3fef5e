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

#ifndef DISAMBIG_BASE_ERROR_H_
#define DISAMBIG_BASE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace disambig {

// Every failure the library reports carries one of these codes so callers
// (and tests) can branch on the kind of failure instead of the message.
enum class ErrorCode {
  kEmptyLastName,
  kParseError,
  kDuplicateRecordId,
  kInvalidConfig,
  kMissingSurvivorId,
  kOffsetOutOfBounds,
  kShapeMismatch,
  kEmptyTrainingSet,
  kNonBinaryLabel,
  kLayoutMismatch,
  kIoError,
  kVersionMismatch,
  kChecksumMismatch,
  kPartitionViolation,
  kMissingPrediction,
  kStageInputMissing,
  kConfigDigestMismatch,
  kUsage,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace disambig

#endif  // DISAMBIG_BASE_ERROR_H_
