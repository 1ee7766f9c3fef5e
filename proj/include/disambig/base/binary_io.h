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

// Little-endian byte buffers for the binary artifact files. Every container
// ends in a CRC-32 of all preceding bytes.

#ifndef DISAMBIG_BASE_BINARY_IO_H_
#define DISAMBIG_BASE_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace disambig {

static_assert(std::endian::native == std::endian::little,
              "binary artifacts assume a little-endian host");

class ByteWriter {
 public:
  template <typename T>
  void Put(T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    const auto* p = reinterpret_cast<const char*>(&value);
    bytes_.append(p, sizeof(T));
  }
  void PutString(std::string_view s) {
    Put<uint32_t>(static_cast<uint32_t>(s.size()));
    bytes_.append(s);
  }
  void PutFloats(std::span<const float> values) {
    bytes_.append(reinterpret_cast<const char*>(values.data()),
                  values.size_bytes());
  }
  void PutRaw(std::string_view raw) { bytes_.append(raw); }

  // Appends the CRC-32 trailer and writes the file. Throws Error(kIoError).
  void WriteFileWithChecksum(const std::string& path);

  const std::string& bytes() const { return bytes_; }

 private:
  std::string bytes_;
};

// Reads a buffer produced by ByteWriter. Any read past the end throws
// Error(kChecksumMismatch): a short buffer is a corrupt one.
class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T Get() {
    static_assert(std::is_trivially_copyable_v<T>);
    T value;
    std::memcpy(&value, Take(sizeof(T)).data(), sizeof(T));
    return value;
  }
  std::string GetString() {
    const uint32_t n = Get<uint32_t>();
    return std::string(Take(n));
  }
  void GetFloats(std::span<float> out) {
    const std::string_view raw = Take(out.size_bytes());
    std::memcpy(out.data(), raw.data(), raw.size());
  }
  std::string_view Take(size_t n);

  bool AtEnd() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  size_t pos_ = 0;
};

uint32_t Crc32(std::string_view bytes);

// Reads `path`, checks and strips the CRC-32 trailer. Throws Error(kIoError)
// or Error(kChecksumMismatch).
std::string ReadFileVerifyChecksum(const std::string& path);

}  // namespace disambig

#endif  // DISAMBIG_BASE_BINARY_IO_H_
