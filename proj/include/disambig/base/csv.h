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

#ifndef DISAMBIG_BASE_CSV_H_
#define DISAMBIG_BASE_CSV_H_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace disambig {

struct CsvRow {
  int line = 0;  // 1-based line on which the row starts
  std::vector<std::string> fields;
};

// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
// newlines. Lines starting with '#' outside a quoted field are skipped, as
// are blank lines. Throws Error(kParseError) on an unterminated quote.
std::vector<CsvRow> ParseCsv(std::string_view text);

std::string CsvEscape(std::string_view field);
void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields);

std::vector<std::string> SplitString(std::string_view text, char sep);
std::string JoinStrings(const std::vector<std::string>& parts,
                        std::string_view sep);

std::string ReadFileOrThrow(const std::string& path);

}  // namespace disambig

#endif  // DISAMBIG_BASE_CSV_H_
