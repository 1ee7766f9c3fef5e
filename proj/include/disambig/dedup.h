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

// Exact-key duplicate removal ahead of blocking, and the inverse step that
// hands each removed record the UID its survivor ends up with.

#ifndef DISAMBIG_DEDUP_H_
#define DISAMBIG_DEDUP_H_

#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "disambig/ingest.h"

namespace disambig {

enum class DuplicationKeyKind { kIpc, kAssignee };

struct DuplicationKey {
  std::string key;
  DuplicationKeyKind kind;

  bool operator==(const DuplicationKey&) const = default;
};

struct DuplicationKeys {
  DuplicationKey ipc;       // last + first + city + join(ipc_codes, "_")
  DuplicationKey assignee;  // last + first + city + join(assignees, "|")
};

DuplicationKeys ComputeDuplicationKeys(const Record& r);

struct DedupResult {
  std::vector<Record> survivors;                      // input order
  std::map<std::string, std::string> duplicate_of;    // removed -> survivor
};

// Records sharing either key are merged transitively (across both key
// kinds); the earliest record in input order survives.
DedupResult RemoveDuplicates(std::span<const Record> records);

// Extends a survivor assignment to the removed records. Throws
// Error(kMissingSurvivorId) if a survivor referenced by `dedup` is absent.
std::map<std::string, std::string> PropagateIds(
    const std::map<std::string, std::string>& assignment,
    const DedupResult& dedup);

// CSV with header "removed_id,survivor_id".
void WriteDuplicateMap(const DedupResult& dedup, std::ostream& out);

}  // namespace disambig

#endif  // DISAMBIG_DEDUP_H_
