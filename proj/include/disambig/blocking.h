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

// Name-prefix blocking. Records start in blocks keyed by the first three
// letters of the last name; any block holding more than `max_block_size`
// records is split by lengthening the prefix one letter at a time, first
// through the rest of the last name and then, after a ',' separator,
// through the first name.

#ifndef DISAMBIG_BLOCKING_H_
#define DISAMBIG_BLOCKING_H_

#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "disambig/ingest.h"

namespace disambig {

inline constexpr int kDefaultMaxBlockSize = 100;
inline constexpr int kUnboundedBlockSize = std::numeric_limits<int>::max();

struct Blocking {
  std::map<std::string, std::vector<std::string>> blocks;  // key -> ids
  int max_block_size = kDefaultMaxBlockSize;

  size_t NumRecords() const;
  size_t NumPairs() const;
  // Inverse index: record_id -> block key.
  std::map<std::string, std::string> KeyOf() const;
};

// The longest key a record can be given: last name, or last + "," + first
// when the first name is non-empty.
std::string ExhaustedBlockKey(const Record& r);

// Key of `r` at refinement depth `depth` (0 = three-letter prefix). Returns
// the exhausted key once depth runs past it.
std::string BlockKeyAtDepth(const Record& r, int depth);

Blocking BuildBlocks(std::span<const Record> records,
                     int max_block_size = kDefaultMaxBlockSize);

struct RecordPair {
  std::string block_key;
  std::string a;  // a < b
  std::string b;

  bool operator==(const RecordPair&) const = default;
};

// Each unordered within-block pair exactly once, blocks in key order and
// members in insertion order.
void ForEachWithinBlockPair(const Blocking& blocking,
                            const std::function<void(const RecordPair&)>& fn);
std::vector<RecordPair> WithinBlockPairs(const Blocking& blocking);

// Fraction of same-entity pairs (among records present in `blocking`) whose
// two records share a block; 1.0 when there are no such pairs.
double EstimateMaxRecall(const LabeledCorpus& corpus, const Blocking& blocking);

// CSV "block_key,size".
void WriteBlockStats(const Blocking& blocking, std::ostream& out);

}  // namespace disambig

#endif  // DISAMBIG_BLOCKING_H_
