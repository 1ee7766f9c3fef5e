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

#include "disambig/dedup.h"

#include <numeric>
#include <unordered_map>

#include "disambig/base/csv.h"
#include "disambig/base/error.h"

namespace disambig {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), size_t{0});
  }

  size_t Find(size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller index becomes the root, so every root is the earliest
  // member of its set.
  void Union(size_t a, size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<size_t> parent_;
};

}  // namespace

DuplicationKeys ComputeDuplicationKeys(const Record& r) {
  const std::string stem = r.last_name + r.first_name + r.city;
  return {{stem + JoinStrings(r.ipc_codes, "_"), DuplicationKeyKind::kIpc},
          {stem + JoinStrings(r.assignees, "|"),
           DuplicationKeyKind::kAssignee}};
}

DedupResult RemoveDuplicates(std::span<const Record> records) {
  DisjointSets sets(records.size());
  std::unordered_map<std::string, size_t> first_by_ipc;
  std::unordered_map<std::string, size_t> first_by_assignee;
  for (size_t i = 0; i < records.size(); ++i) {
    const DuplicationKeys keys = ComputeDuplicationKeys(records[i]);
    const auto [ipc_it, ipc_new] = first_by_ipc.emplace(keys.ipc.key, i);
    if (!ipc_new) sets.Union(ipc_it->second, i);
    const auto [as_it, as_new] =
        first_by_assignee.emplace(keys.assignee.key, i);
    if (!as_new) sets.Union(as_it->second, i);
  }

  DedupResult result;
  for (size_t i = 0; i < records.size(); ++i) {
    const size_t root = sets.Find(i);
    if (root == i) {
      result.survivors.push_back(records[i]);
    } else {
      result.duplicate_of[records[i].record_id] = records[root].record_id;
    }
  }
  return result;
}

std::map<std::string, std::string> PropagateIds(
    const std::map<std::string, std::string>& assignment,
    const DedupResult& dedup) {
  std::map<std::string, std::string> out = assignment;
  for (const Record& r : dedup.survivors) {
    if (!assignment.count(r.record_id)) {
      throw Error(ErrorCode::kMissingSurvivorId,
                  "no id assigned to survivor " + r.record_id);
    }
  }
  for (const auto& [removed, survivor] : dedup.duplicate_of) {
    const auto it = assignment.find(survivor);
    if (it == assignment.end()) {
      throw Error(ErrorCode::kMissingSurvivorId,
                  "no id assigned to survivor " + survivor);
    }
    out[removed] = it->second;
  }
  return out;
}

void WriteDuplicateMap(const DedupResult& dedup, std::ostream& out) {
  WriteCsvRow(out, {"removed_id", "survivor_id"});
  for (const auto& [removed, survivor] : dedup.duplicate_of) {
    WriteCsvRow(out, {removed, survivor});
  }
}

}  // namespace disambig
