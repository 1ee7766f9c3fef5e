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

// Patent-inventor records: normalization, corpus loading and saving.

#ifndef DISAMBIG_INGEST_H_
#define DISAMBIG_INGEST_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace disambig {

// A record as it appears in an input file, before normalization.
struct RawRecord {
  std::string record_id;
  std::string first_name;
  std::string middle_name;
  std::string last_name;
  std::string city;
  std::vector<std::string> ipc_codes;
  std::vector<std::string> co_inventors;
  std::vector<std::string> assignees;
};

// One patent-inventor name instance. All text is uppercase A-Z, 0-9 and
// single spaces; list fields hold no empty strings.
struct Record {
  std::string record_id;
  std::string first_name;
  std::string middle_name;
  std::string last_name;
  std::string city;
  std::vector<std::string> ipc_codes;
  std::vector<std::string> co_inventor_last_names;
  std::vector<std::string> assignees;

  bool operator==(const Record&) const = default;
};

struct LabeledCorpus {
  std::vector<Record> records;
  // record_id -> entity label. Empty for an unlabeled corpus.
  std::map<std::string, std::string> entity_ids;

  bool labeled() const { return !entity_ids.empty(); }
  size_t NumEntities() const;
  bool operator==(const LabeledCorpus&) const = default;
};

enum class CorpusFormat { kJsonLines, kCsv };

// Uppercases, transliterates Latin-1 / Latin Extended-A letters to their
// ASCII base letter, drops anything outside [A-Z0-9 ], and collapses runs of
// whitespace. Idempotent.
std::string NormalizeText(std::string_view raw);

// Throws Error(kEmptyLastName).
Record NormalizeRecord(const RawRecord& raw);

// Throws Error(kParseError) with the offending row, Error(kDuplicateRecordId),
// Error(kEmptyLastName) or Error(kIoError).
LabeledCorpus LoadCorpus(const std::string& path, CorpusFormat format);
LabeledCorpus ParseCorpus(std::string_view text, CorpusFormat format);

void SaveCorpus(const LabeledCorpus& corpus, const std::string& path,
                CorpusFormat format);
std::string SerializeCorpus(const LabeledCorpus& corpus, CorpusFormat format);

// ".csv" selects kCsv, everything else kJsonLines.
CorpusFormat FormatFromPath(std::string_view path);

}  // namespace disambig

#endif  // DISAMBIG_INGEST_H_
