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

#ifndef DISAMBIG_BASE_DIGEST_H_
#define DISAMBIG_BASE_DIGEST_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace disambig {

// FNV-1a 64-bit. Used to tag artifacts with the configuration that produced
// them; not a cryptographic hash.
class Digest {
 public:
  Digest& Add(std::string_view field);
  Digest& Add(std::string_view key, std::string_view value);
  Digest& Add(std::string_view key, double value);
  Digest& Add(std::string_view key, int64_t value);

  uint64_t value() const { return state_; }
  std::string Hex() const;

 private:
  void Mix(std::string_view bytes);

  uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string DigestOfFile(const std::string& path);

}  // namespace disambig

#endif  // DISAMBIG_BASE_DIGEST_H_
