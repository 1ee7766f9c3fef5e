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

#include "disambig/ingest.h"

#include <fstream>
#include <set>
#include <sstream>

#include "disambig/base/csv.h"
#include "disambig/base/error.h"
#include "json.hpp"

namespace disambig {
namespace {

// Uppercase ASCII base letter for U+00C0..U+00FF; '.' means no single-letter
// mapping exists and the character is dropped.
constexpr std::string_view kLatin1 =
    "AAAAAA.CEEEEIIIIDNOOOOO.OUUUUY..AAAAAA.CEEEEIIIIDNOOOOO.OUUUUY.Y";

// Same for U+0100..U+017F.
constexpr std::string_view kLatinExtendedA =
    "AAAAAACCCCCCCCDDDDEEEEEEEEEEGGGGGGGGHHHHIIIIIIIIII..JJKKKLLLLLLL"
    "LLLNNNNNNNNNOOOOOO..RRRRRRSSSSSSSSTTTTTTUUUUUUUUUUUUWWYYYZZZZZZS";

static_assert(kLatin1.size() == 64);
static_assert(kLatinExtendedA.size() == 128);

// Decodes one UTF-8 sequence at text[*pos]; returns U+FFFD for malformed
// input and always advances.
char32_t DecodeUtf8(std::string_view text, size_t* pos) {
  const auto byte = [&](size_t i) {
    return static_cast<unsigned char>(text[i]);
  };
  const unsigned char lead = byte(*pos);
  int len = 0;
  char32_t cp = 0;
  if (lead < 0x80) {
    ++*pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    len = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    cp = lead & 0x07;
  } else {
    ++*pos;
    return 0xFFFD;
  }
  if (*pos + len > text.size()) {
    ++*pos;
    return 0xFFFD;
  }
  for (int k = 1; k < len; ++k) {
    const unsigned char c = byte(*pos + k);
    if ((c & 0xC0) != 0x80) {
      ++*pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  *pos += len;
  return cp;
}

// Returns the normalized character for `cp`, ' ' for whitespace, or 0 to drop.
char MapCodepoint(char32_t cp) {
  if (cp >= 'a' && cp <= 'z') return static_cast<char>(cp - 'a' + 'A');
  if ((cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9')) {
    return static_cast<char>(cp);
  }
  if (cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\v' ||
      cp == '\f' || cp == 0xA0) {
    return ' ';
  }
  char mapped = '.';
  if (cp >= 0xC0 && cp <= 0xFF) mapped = kLatin1[cp - 0xC0];
  if (cp >= 0x100 && cp <= 0x17F) mapped = kLatinExtendedA[cp - 0x100];
  return mapped == '.' ? 0 : mapped;
}

std::vector<std::string> NormalizeList(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  out.reserve(raw.size());
  for (const std::string& item : raw) {
    std::string norm = NormalizeText(item);
    if (!norm.empty()) out.push_back(std::move(norm));
  }
  return out;
}

[[noreturn]] void ThrowParse(int line, const std::string& what) {
  throw Error(ErrorCode::kParseError,
              "row at line " + std::to_string(line) + ": " + what);
}

std::string JsonString(const nlohmann::json& obj, const char* key, int line) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return "";
  if (!it->is_string()) ThrowParse(line, std::string(key) + " is not a string");
  return it->get<std::string>();
}

std::vector<std::string> JsonList(const nlohmann::json& obj, const char* key,
                                  int line) {
  std::vector<std::string> out;
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) ThrowParse(line, std::string(key) + " is not an array");
  for (const auto& v : *it) {
    if (!v.is_string()) {
      ThrowParse(line, std::string(key) + " holds a non-string value");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

struct ParsedRow {
  int line;
  RawRecord raw;
  bool has_entity;
  std::string entity;
};

std::vector<ParsedRow> ParseJsonLines(std::string_view text) {
  std::vector<ParsedRow> rows;
  int line = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view content = text.substr(start, end - start);
    start = end + 1;
    ++line;
    if (content.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
      ThrowParse(line, e.what());
    }
    if (!obj.is_object()) ThrowParse(line, "not a JSON object");

    ParsedRow row{line, {}, false, ""};
    row.raw.record_id = JsonString(obj, "record_id", line);
    row.raw.first_name = JsonString(obj, "first_name", line);
    row.raw.middle_name = JsonString(obj, "middle_name", line);
    row.raw.last_name = JsonString(obj, "last_name", line);
    row.raw.city = JsonString(obj, "city", line);
    row.raw.ipc_codes = JsonList(obj, "ipc_codes", line);
    row.raw.co_inventors = JsonList(obj, "co_inventors", line);
    row.raw.assignees = JsonList(obj, "assignees", line);
    if (const auto it = obj.find("entity_id");
        it != obj.end() && !it->is_null()) {
      if (it->is_string()) {
        row.entity = it->get<std::string>();
      } else if (it->is_number_integer()) {
        row.entity = std::to_string(it->get<int64_t>());
      } else {
        ThrowParse(line, "entity_id is neither string nor integer");
      }
      row.has_entity = true;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> CellList(const std::string& cell) {
  if (cell.empty()) return {};
  return SplitString(cell, '|');
}

std::vector<ParsedRow> ParseCsvRows(std::string_view text) {
  const std::vector<CsvRow> csv = ParseCsv(text);
  std::vector<ParsedRow> rows;
  if (csv.empty()) return rows;

  std::map<std::string, size_t> column;
  for (size_t i = 0; i < csv[0].fields.size(); ++i) {
    std::string name = csv[0].fields[i];
    const size_t first = name.find_first_not_of(" \t");
    const size_t last = name.find_last_not_of(" \t");
    name = first == std::string::npos ? ""
                                      : name.substr(first, last - first + 1);
    column[name] = i;
  }
  for (const char* required : {"record_id", "last_name"}) {
    if (!column.count(required)) {
      ThrowParse(csv[0].line, std::string("missing column ") + required);
    }
  }
  const bool has_entity = column.count("entity_id") > 0;

  for (size_t r = 1; r < csv.size(); ++r) {
    const CsvRow& row = csv[r];
    if (row.fields.size() != csv[0].fields.size()) {
      ThrowParse(row.line, "expected " + std::to_string(csv[0].fields.size()) +
                               " fields, got " +
                               std::to_string(row.fields.size()));
    }
    const auto cell = [&](const char* name) -> std::string {
      const auto it = column.find(name);
      return it == column.end() ? std::string() : row.fields[it->second];
    };
    ParsedRow parsed{row.line, {}, false, ""};
    parsed.raw.record_id = cell("record_id");
    parsed.raw.first_name = cell("first_name");
    parsed.raw.middle_name = cell("middle_name");
    parsed.raw.last_name = cell("last_name");
    parsed.raw.city = cell("city");
    parsed.raw.ipc_codes = CellList(cell("ipc_codes"));
    parsed.raw.co_inventors = CellList(cell("co_inventors"));
    parsed.raw.assignees = CellList(cell("assignees"));
    if (has_entity) {
      parsed.entity = cell("entity_id");
      parsed.has_entity = !parsed.entity.empty();
    }
    rows.push_back(std::move(parsed));
  }
  return rows;
}

}  // namespace

size_t LabeledCorpus::NumEntities() const {
  std::set<std::string> distinct;
  for (const auto& [id, entity] : entity_ids) distinct.insert(entity);
  return distinct.size();
}

std::string NormalizeText(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  size_t pos = 0;
  while (pos < raw.size()) {
    const char c = MapCodepoint(DecodeUtf8(raw, &pos));
    if (c == 0) continue;
    if (c == ' ') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

Record NormalizeRecord(const RawRecord& raw) {
  Record r;
  r.record_id = raw.record_id;
  r.first_name = NormalizeText(raw.first_name);
  r.middle_name = NormalizeText(raw.middle_name);
  r.last_name = NormalizeText(raw.last_name);
  r.city = NormalizeText(raw.city);
  r.ipc_codes = NormalizeList(raw.ipc_codes);
  r.co_inventor_last_names = NormalizeList(raw.co_inventors);
  r.assignees = NormalizeList(raw.assignees);
  if (r.last_name.empty()) {
    throw Error(ErrorCode::kEmptyLastName,
                "record '" + raw.record_id + "' has no last name");
  }
  return r;
}

LabeledCorpus ParseCorpus(std::string_view text, CorpusFormat format) {
  const std::vector<ParsedRow> rows = format == CorpusFormat::kCsv
                                          ? ParseCsvRows(text)
                                          : ParseJsonLines(text);
  LabeledCorpus corpus;
  std::set<std::string> seen;
  size_t labeled_rows = 0;
  for (const ParsedRow& row : rows) {
    if (row.raw.record_id.empty()) ThrowParse(row.line, "missing record_id");
    if (!seen.insert(row.raw.record_id).second) {
      throw Error(ErrorCode::kDuplicateRecordId,
                  "record_id '" + row.raw.record_id + "' repeated at line " +
                      std::to_string(row.line));
    }
    try {
      corpus.records.push_back(NormalizeRecord(row.raw));
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " (line " +
                                std::to_string(row.line) + ")");
    }
    if (row.has_entity) {
      corpus.entity_ids[row.raw.record_id] = row.entity;
      ++labeled_rows;
    }
  }
  if (labeled_rows != 0 && labeled_rows != rows.size()) {
    throw Error(ErrorCode::kParseError,
                "entity_id present on some rows but not all");
  }
  return corpus;
}

LabeledCorpus LoadCorpus(const std::string& path, CorpusFormat format) {
  return ParseCorpus(ReadFileOrThrow(path), format);
}

std::string SerializeCorpus(const LabeledCorpus& corpus, CorpusFormat format) {
  std::ostringstream out;
  const bool labeled = corpus.labeled();
  if (format == CorpusFormat::kCsv) {
    std::vector<std::string> header = {"record_id", "first_name", "middle_name",
                                       "last_name", "city",       "ipc_codes",
                                       "co_inventors", "assignees"};
    if (labeled) header.push_back("entity_id");
    WriteCsvRow(out, header);
    for (const Record& r : corpus.records) {
      std::vector<std::string> fields = {
          r.record_id,
          r.first_name,
          r.middle_name,
          r.last_name,
          r.city,
          JoinStrings(r.ipc_codes, "|"),
          JoinStrings(r.co_inventor_last_names, "|"),
          JoinStrings(r.assignees, "|")};
      if (labeled) fields.push_back(corpus.entity_ids.at(r.record_id));
      WriteCsvRow(out, fields);
    }
    return out.str();
  }
  for (const Record& r : corpus.records) {
    nlohmann::ordered_json obj;
    obj["record_id"] = r.record_id;
    obj["first_name"] = r.first_name;
    obj["middle_name"] = r.middle_name;
    obj["last_name"] = r.last_name;
    obj["city"] = r.city;
    obj["ipc_codes"] = r.ipc_codes;
    obj["co_inventors"] = r.co_inventor_last_names;
    obj["assignees"] = r.assignees;
    if (labeled) obj["entity_id"] = corpus.entity_ids.at(r.record_id);
    out << obj.dump() << '\n';
  }
  return out.str();
}

void SaveCorpus(const LabeledCorpus& corpus, const std::string& path,
                CorpusFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << SerializeCorpus(corpus, format);
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

CorpusFormat FormatFromPath(std::string_view path) {
  return path.size() >= 4 && path.substr(path.size() - 4) == ".csv"
             ? CorpusFormat::kCsv
             : CorpusFormat::kJsonLines;
}

}  // namespace disambig
