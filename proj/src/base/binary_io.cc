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

#include "disambig/base/binary_io.h"

#include <zlib.h>

#include <fstream>

#include "disambig/base/csv.h"
#include "disambig/base/error.h"

namespace disambig {

uint32_t Crc32(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks.
  constexpr size_t kChunk = 1u << 30;
  for (size_t off = 0; off < bytes.size(); off += kChunk) {
    const size_t n = std::min(kChunk, bytes.size() - off);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + off),
                static_cast<uInt>(n));
  }
  return static_cast<uint32_t>(crc);
}

void ByteWriter::WriteFileWithChecksum(const std::string& path) {
  const uint32_t crc = Crc32(bytes_);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out.write(bytes_.data(), static_cast<std::streamsize>(bytes_.size()));
  out.write(reinterpret_cast<const char*>(&crc), sizeof(crc));
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

std::string_view ByteReader::Take(size_t n) {
  if (n > bytes_.size() - pos_) {
    throw Error(ErrorCode::kChecksumMismatch, "unexpected end of data");
  }
  const std::string_view out = bytes_.substr(pos_, n);
  pos_ += n;
  return out;
}

std::string ReadFileVerifyChecksum(const std::string& path) {
  std::string bytes = ReadFileOrThrow(path);
  if (bytes.size() < sizeof(uint32_t)) {
    throw Error(ErrorCode::kChecksumMismatch, path + " is truncated");
  }
  uint32_t stored;
  std::memcpy(&stored, bytes.data() + bytes.size() - sizeof(stored),
              sizeof(stored));
  bytes.resize(bytes.size() - sizeof(stored));
  if (Crc32(bytes) != stored) {
    throw Error(ErrorCode::kChecksumMismatch, path + " failed its checksum");
  }
  return bytes;
}

}  // namespace disambig
