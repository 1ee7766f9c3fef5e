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

#include "disambig/layout.h"

#include <cstdlib>
#include <set>
#include <sstream>

#include "disambig/base/digest.h"
#include "disambig/base/error.h"
#include "disambig/base/rng.h"

namespace disambig {

// Defined in the generated layouts_data.cc.
extern const char kBuiltinLayoutText[];

namespace {

std::string Trim(std::string_view s) {
  const size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const size_t last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> Words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::optional<FieldRole> RoleFromName(std::string_view name) {
  for (FieldRole role : kAllFieldRoles) {
    if (FieldRoleName(role) == name) return role;
  }
  return std::nullopt;
}

class LayoutFileParser {
 public:
  explicit LayoutFileParser(std::string_view text) : text_(text) {}

  LayoutRegistry Parse() {
    size_t start = 0;
    while (start <= text_.size()) {
      size_t end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      ++line_;
      ParseLine(Trim(text_.substr(start, end - start)));
      start = end + 1;
    }
    FinishSection();
    if (version_ != kLayoutFormatVersion) {
      throw Error(ErrorCode::kVersionMismatch,
                  "layout file format_version " + std::to_string(version_) +
                      ", expected " + std::to_string(kLayoutFormatVersion));
    }
    for (auto& [name, layout] : layouts_) layout.Validate();
    return std::move(layouts_);
  }

 private:
  enum class Section { kNone, kStringMap, kLayout };

  [[noreturn]] void Fail(const std::string& what) const {
    throw Error(ErrorCode::kParseError,
                "layout file line " + std::to_string(line_) + ": " + what);
  }

  int ParseInt(const std::string& s) const {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0') Fail("expected an integer, got '" + s + "'");
    return static_cast<int>(v);
  }

  bool ParseBool(const std::string& s) const {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    Fail("expected true or false, got '" + s + "'");
  }

  void ParseLine(const std::string& line) {
    if (line.empty() || line[0] == '#') return;
    if (line.front() == '[') {
      if (line.back() != ']') Fail("unterminated section header");
      FinishSection();
      const std::vector<std::string> head =
          Words(std::string_view(line).substr(1, line.size() - 2));
      if (head.size() != 2) Fail("section header needs a kind and a name");
      section_name_ = head[1];
      if (head[0] == "stringmap") {
        section_ = Section::kStringMap;
        spec_ = LayoutSpec{};
        spec_.name = section_name_;
        rows_.clear();
        derive_.clear();
      } else if (head[0] == "layout") {
        section_ = Section::kLayout;
        layout_ = RecordMapLayout{};
        layout_.name = section_name_;
        blue_override_.reset();
      } else {
        Fail("unknown section kind '" + head[0] + "'");
      }
      return;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) Fail("expected key = value");
    const std::string key = Trim(std::string_view(line).substr(0, eq));
    const std::string value = Trim(std::string_view(line).substr(eq + 1));
    switch (section_) {
      case Section::kNone:
        if (key != "format_version") Fail("unknown top-level key " + key);
        version_ = ParseInt(value);
        return;
      case Section::kStringMap:
        StringMapKey(key, value);
        return;
      case Section::kLayout:
        LayoutKey(key, value);
        return;
    }
  }

  void StringMapKey(const std::string& key, const std::string& value) {
    if (key == "size") {
      const auto w = Words(value);
      if (w.size() != 2) Fail("size needs width and height");
      spec_.grid_width = ParseInt(w[0]);
      spec_.grid_height = ParseInt(w[1]);
    } else if (key == "increment") {
      char* end = nullptr;
      spec_.per_pixel_increment = std::strtof(value.c_str(), &end);
      if (*end != '\0') Fail("bad increment");
    } else if (key == "blue") {
      spec_.use_blue_leading_bigram = ParseBool(value);
    } else if (key == "row") {
      rows_.push_back(value);
    } else if (key == "derive") {
      const auto it = stringmaps_.find(value);
      if (it == stringmaps_.end()) Fail("unknown string-map '" + value + "'");
      derive_ = value;
      const std::string name = spec_.name;
      spec_ = it->second;
      spec_.name = name;
    } else if (key == "shuffle_order" || key == "shuffle_layout") {
      if (derive_.empty()) Fail(key + " requires derive");
      const uint64_t seed = static_cast<uint64_t>(ParseInt(value));
      const std::string name = spec_.name;
      spec_ = key == "shuffle_order" ? ShuffleCharacterOrder(spec_, seed)
                                     : ShuffleCharacterLayout(spec_, seed);
      spec_.name = name;
    } else {
      Fail("unknown string-map key '" + key + "'");
    }
  }

  void LayoutKey(const std::string& key, const std::string& value) {
    if (key == "canvas") {
      const auto w = Words(value);
      if (w.size() != 2) Fail("canvas needs width and height");
      layout_.canvas_width = ParseInt(w[0]);
      layout_.canvas_height = ParseInt(w[1]);
    } else if (key.rfind("slot ", 0) == 0) {
      const auto role = RoleFromName(Trim(std::string_view(key).substr(5)));
      if (!role) Fail("unknown slot role in '" + key + "'");
      const auto w = Words(value);
      if (w.size() != 3) Fail("slot needs a string-map and x y offsets");
      const auto it = stringmaps_.find(w[0]);
      if (it == stringmaps_.end()) Fail("unknown string-map '" + w[0] + "'");
      layout_.slots[*role] = Slot{it->second, {ParseInt(w[1]), ParseInt(w[2])}};
    } else if (key == "derive") {
      const auto it = layouts_.find(value);
      if (it == layouts_.end()) Fail("unknown layout '" + value + "'");
      const std::string name = layout_.name;
      layout_ = it->second;
      layout_.name = name;
    } else if (key == "blue") {
      blue_override_ = ParseBool(value);
    } else {
      Fail("unknown layout key '" + key + "'");
    }
  }

  void FinishSection() {
    if (section_ == Section::kStringMap) {
      if (!rows_.empty()) {
        if (!derive_.empty()) Fail("rows and derive are exclusive");
        if (static_cast<int>(rows_.size()) != spec_.grid_height) {
          Fail("string-map '" + spec_.name + "' has " +
               std::to_string(rows_.size()) + " rows, size says " +
               std::to_string(spec_.grid_height));
        }
        spec_.char_coords.clear();
        for (int y = 0; y < spec_.grid_height; ++y) {
          const std::string& row = rows_[y];
          if (static_cast<int>(row.size()) != spec_.grid_width) {
            Fail("string-map '" + spec_.name + "' row " + std::to_string(y) +
                 " has the wrong width");
          }
          for (int x = 0; x < spec_.grid_width; ++x) {
            if (row[x] == '.') continue;
            if (!spec_.char_coords.emplace(row[x], Point{x, y}).second) {
              Fail("character '" + std::string(1, row[x]) +
                   "' appears twice in '" + spec_.name + "'");
            }
          }
        }
      }
      spec_.Validate();
      if (!stringmaps_.emplace(spec_.name, spec_).second) {
        Fail("duplicate string-map '" + spec_.name + "'");
      }
    } else if (section_ == Section::kLayout) {
      if (blue_override_) {
        for (auto& [role, slot] : layout_.slots) {
          slot.spec.use_blue_leading_bigram = *blue_override_;
        }
      }
      if (!layouts_.emplace(layout_.name, layout_).second) {
        Fail("duplicate layout '" + layout_.name + "'");
      }
    }
    section_ = Section::kNone;
  }

  std::string_view text_;
  int line_ = 0;
  int version_ = 0;
  Section section_ = Section::kNone;
  std::string section_name_;
  LayoutSpec spec_;
  std::vector<std::string> rows_;
  std::string derive_;
  RecordMapLayout layout_;
  std::optional<bool> blue_override_;
  std::map<std::string, LayoutSpec> stringmaps_;
  LayoutRegistry layouts_;
};

}  // namespace

std::string_view FieldRoleName(FieldRole role) {
  switch (role) {
    case FieldRole::kFirst: return "first";
    case FieldRole::kMiddle: return "middle";
    case FieldRole::kLast: return "last";
    case FieldRole::kCity: return "city";
    case FieldRole::kIpc: return "ipc";
    case FieldRole::kCoInventors: return "coinventors";
    case FieldRole::kAssignees: return "assignees";
  }
  return "?";
}

void LayoutSpec::Validate() const {
  const auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kInvalidConfig, "string-map '" + name + "': " + what);
  };
  if (grid_width <= 0 || grid_height <= 0) fail("empty grid");
  if (!(per_pixel_increment > 0.0f && per_pixel_increment <= 1.0f)) {
    fail("increment must lie in (0, 1]");
  }
  std::set<Point> used;
  for (const auto& [c, p] : char_coords) {
    if (p.x < 0 || p.y < 0 || p.x >= grid_width || p.y >= grid_height) {
      fail(std::string("character '") + c + "' lies off the grid");
    }
    if (!used.insert(p).second) fail("two characters share a pixel");
  }
}

void RecordMapLayout::Validate() const {
  const auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kInvalidConfig, "layout '" + name + "': " + what);
  };
  if (canvas_width <= 0 || canvas_height <= 0) fail("empty canvas");
  for (FieldRole role : kAllFieldRoles) {
    const auto it = slots.find(role);
    if (it == slots.end()) {
      fail("missing slot " + std::string(FieldRoleName(role)));
    }
    const Slot& s = it->second;
    s.spec.Validate();
    if (s.offset.x < 0 || s.offset.y < 0 ||
        s.offset.x + s.spec.grid_width > canvas_width ||
        s.offset.y + s.spec.grid_height > canvas_height) {
      fail("slot " + std::string(FieldRoleName(role)) + " leaves the canvas");
    }
  }
  for (auto a = slots.begin(); a != slots.end(); ++a) {
    for (auto b = std::next(a); b != slots.end(); ++b) {
      const Slot& p = a->second;
      const Slot& q = b->second;
      const bool apart =
          p.offset.x + p.spec.grid_width <= q.offset.x ||
          q.offset.x + q.spec.grid_width <= p.offset.x ||
          p.offset.y + p.spec.grid_height <= q.offset.y ||
          q.offset.y + q.spec.grid_height <= p.offset.y;
      if (!apart) {
        fail("slots " + std::string(FieldRoleName(a->first)) + " and " +
             std::string(FieldRoleName(b->first)) + " overlap");
      }
    }
  }
}

std::string RecordMapLayout::Fingerprint() const {
  Digest d;
  d.Add("canvas", static_cast<int64_t>(canvas_width))
      .Add("h", static_cast<int64_t>(canvas_height));
  for (const auto& [role, slot] : slots) {
    d.Add(FieldRoleName(role));
    d.Add("x", static_cast<int64_t>(slot.offset.x))
        .Add("y", static_cast<int64_t>(slot.offset.y));
    d.Add("w", static_cast<int64_t>(slot.spec.grid_width))
        .Add("h", static_cast<int64_t>(slot.spec.grid_height));
    d.Add("inc", static_cast<double>(slot.spec.per_pixel_increment));
    d.Add("blue", static_cast<int64_t>(slot.spec.use_blue_leading_bigram));
    for (const auto& [c, p] : slot.spec.char_coords) {
      d.Add(std::string(1, c), static_cast<int64_t>(p.y * 1000 + p.x));
    }
  }
  return d.Hex();
}

LayoutRegistry ParseLayoutFile(std::string_view text) {
  return LayoutFileParser(text).Parse();
}

std::string_view BuiltinLayoutText() { return kBuiltinLayoutText; }

const LayoutRegistry& BuiltinLayoutRegistry() {
  static const LayoutRegistry registry = ParseLayoutFile(BuiltinLayoutText());
  return registry;
}

const RecordMapLayout& FindLayout(const LayoutRegistry& registry,
                                  const std::string& name) {
  const auto it = registry.find(name);
  if (it == registry.end()) {
    throw Error(ErrorCode::kInvalidConfig, "unknown layout '" + name + "'");
  }
  return it->second;
}

LayoutSpec ShuffleCharacterOrder(const LayoutSpec& base, uint64_t seed) {
  LayoutSpec out = base;
  std::vector<Point> pixels;
  for (const auto& [c, p] : base.char_coords) pixels.push_back(p);
  Rng rng(seed);
  rng.Shuffle(std::span<Point>(pixels));
  size_t i = 0;
  for (auto& [c, p] : out.char_coords) p = pixels[i++];
  return out;
}

LayoutSpec ShuffleCharacterLayout(const LayoutSpec& base, uint64_t seed) {
  LayoutSpec out = base;
  std::vector<Point> grid;
  for (int y = 0; y < base.grid_height; ++y) {
    for (int x = 0; x < base.grid_width; ++x) grid.push_back({x, y});
  }
  Rng rng(seed);
  rng.Shuffle(std::span<Point>(grid));
  size_t i = 0;
  for (auto& [c, p] : out.char_coords) p = grid[i++];
  return out;
}

}  // namespace disambig
