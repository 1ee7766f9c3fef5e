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

#include "disambig/blocking.h"

#include <algorithm>
#include <cassert>

#include "disambig/base/csv.h"

namespace disambig {
namespace {

constexpr size_t kInitialPrefix = 3;

uint64_t PairsIn(uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

void Split(std::span<const Record> records, const std::string& key,
           std::vector<size_t> members, int depth, int max_block_size,
           Blocking* out) {
  if (members.size() <= static_cast<size_t>(max_block_size)) {
    out->blocks.emplace(key, std::vector<std::string>{});
    for (size_t i : members) out->blocks[key].push_back(records[i].record_id);
    return;
  }
  // Children in key order; members keep input order inside each child.
  std::map<std::string, std::vector<size_t>> children;
  for (size_t i : members) {
    children[BlockKeyAtDepth(records[i], depth + 1)].push_back(i);
  }
  for (auto& [child_key, child_members] : children) {
    if (child_key == key) {
      // These records cannot be refined any further.
      auto& ids = out->blocks[key];
      for (size_t i : child_members) ids.push_back(records[i].record_id);
    } else {
      Split(records, child_key, std::move(child_members), depth + 1,
            max_block_size, out);
    }
  }
}

}  // namespace

size_t Blocking::NumRecords() const {
  size_t n = 0;
  for (const auto& [key, ids] : blocks) n += ids.size();
  return n;
}

size_t Blocking::NumPairs() const {
  size_t n = 0;
  for (const auto& [key, ids] : blocks) n += PairsIn(ids.size());
  return n;
}

std::map<std::string, std::string> Blocking::KeyOf() const {
  std::map<std::string, std::string> index;
  for (const auto& [key, ids] : blocks) {
    for (const std::string& id : ids) index[id] = key;
  }
  return index;
}

std::string ExhaustedBlockKey(const Record& r) {
  if (r.first_name.empty()) return r.last_name;
  return r.last_name + "," + r.first_name;
}

std::string BlockKeyAtDepth(const Record& r, int depth) {
  const size_t last_len = r.last_name.size();
  const size_t start = std::min(kInitialPrefix, last_len);
  // Lengths walk start..last_len, then jump over the bare "," straight to
  // the first letter of the first name.
  size_t len = start + static_cast<size_t>(depth);
  if (len > last_len) len += 1;
  const std::string full = ExhaustedBlockKey(r);
  if (len >= full.size()) return full;
  return full.substr(0, len);
}

Blocking BuildBlocks(std::span<const Record> records, int max_block_size) {
  Blocking blocking;
  blocking.max_block_size = max_block_size;
  std::map<std::string, std::vector<size_t>> initial;
  for (size_t i = 0; i < records.size(); ++i) {
    initial[BlockKeyAtDepth(records[i], 0)].push_back(i);
  }
  for (auto& [key, members] : initial) {
    Split(records, key, std::move(members), 0, max_block_size, &blocking);
  }
  return blocking;
}

void ForEachWithinBlockPair(const Blocking& blocking,
                            const std::function<void(const RecordPair&)>& fn) {
  for (const auto& [key, ids] : blocking.blocks) {
    for (size_t i = 0; i < ids.size(); ++i) {
      for (size_t j = i + 1; j < ids.size(); ++j) {
        if (ids[i] < ids[j]) {
          fn({key, ids[i], ids[j]});
        } else {
          fn({key, ids[j], ids[i]});
        }
      }
    }
  }
}

std::vector<RecordPair> WithinBlockPairs(const Blocking& blocking) {
  std::vector<RecordPair> pairs;
  pairs.reserve(blocking.NumPairs());
  ForEachWithinBlockPair(blocking,
                         [&](const RecordPair& p) { pairs.push_back(p); });
  return pairs;
}

double EstimateMaxRecall(const LabeledCorpus& corpus,
                         const Blocking& blocking) {
  std::map<std::string, uint64_t> entity_sizes;
  uint64_t shared = 0;
  for (const auto& [key, ids] : blocking.blocks) {
    std::map<std::string, uint64_t> in_block;
    for (const std::string& id : ids) {
      const auto it = corpus.entity_ids.find(id);
      if (it == corpus.entity_ids.end()) continue;
      ++in_block[it->second];
      ++entity_sizes[it->second];
    }
    for (const auto& [entity, k] : in_block) shared += PairsIn(k);
  }
  uint64_t total = 0;
  for (const auto& [entity, n] : entity_sizes) total += PairsIn(n);
  if (total == 0) return 1.0;
  return static_cast<double>(shared) / static_cast<double>(total);
}

void WriteBlockStats(const Blocking& blocking, std::ostream& out) {
  WriteCsvRow(out, {"block_key", "size"});
  for (const auto& [key, ids] : blocking.blocks) {
    WriteCsvRow(out, {key, std::to_string(ids.size())});
  }
}

}  // namespace disambig
