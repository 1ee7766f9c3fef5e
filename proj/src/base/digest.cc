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

#include "disambig/base/digest.h"

#include <cstdio>
#include <fstream>
#include <iterator>

#include "disambig/base/error.h"

namespace disambig {

void Digest::Mix(std::string_view bytes) {
  for (unsigned char c : bytes) {
    state_ ^= c;
    state_ *= 0x100000001b3ULL;
  }
}

Digest& Digest::Add(std::string_view field) {
  // Length prefix keeps ("ab","c") and ("a","bc") apart.
  Mix(std::to_string(field.size()));
  Mix(":");
  Mix(field);
  return *this;
}

Digest& Digest::Add(std::string_view key, std::string_view value) {
  Add(key);
  return Add(value);
}

Digest& Digest::Add(std::string_view key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return Add(key, std::string_view(buf));
}

Digest& Digest::Add(std::string_view key, int64_t value) {
  return Add(key, std::string_view(std::to_string(value)));
}

std::string Digest::Hex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(state_));
  return buf;
}

std::string DigestOfFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return Digest().Add(bytes).Hex();
}

}  // namespace disambig
