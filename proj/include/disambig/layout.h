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

// String-map and record-map layouts, and the registry of named layouts that
// ships in data/layouts.txt (compiled into the library).

#ifndef DISAMBIG_LAYOUT_H_
#define DISAMBIG_LAYOUT_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disambig/image.h"

namespace disambig {

// A character -> pixel table for drawing one word.
struct LayoutSpec {
  std::string name;
  int grid_width = 0;
  int grid_height = 0;
  std::map<char, Point> char_coords;
  float per_pixel_increment = 0.25f;
  bool use_blue_leading_bigram = true;

  const Point* Find(char c) const {
    const auto it = char_coords.find(c);
    return it == char_coords.end() ? nullptr : &it->second;
  }

  // Throws Error(kInvalidConfig) if a coordinate is off-grid, two characters
  // share a pixel, or the increment is outside (0, 1].
  void Validate() const;

  bool operator==(const LayoutSpec&) const = default;
};

enum class FieldRole {
  kFirst,
  kMiddle,
  kLast,
  kCity,
  kIpc,
  kCoInventors,
  kAssignees,
};

inline constexpr std::array<FieldRole, 7> kAllFieldRoles = {
    FieldRole::kFirst,       FieldRole::kMiddle,    FieldRole::kLast,
    FieldRole::kCity,        FieldRole::kIpc,       FieldRole::kCoInventors,
    FieldRole::kAssignees};

std::string_view FieldRoleName(FieldRole role);

struct Slot {
  LayoutSpec spec;
  Point offset;

  bool operator==(const Slot&) const = default;
};

struct RecordMapLayout {
  std::string name;
  int canvas_width = 0;
  int canvas_height = 0;
  std::map<FieldRole, Slot> slots;

  // Throws Error(kInvalidConfig) unless every role has a slot, slots lie on
  // the canvas, and no two slot rectangles overlap.
  void Validate() const;

  // Digest of the concrete pixel tables; two layouts render identically iff
  // their fingerprints match (up to hash collisions).
  std::string Fingerprint() const;

  bool operator==(const RecordMapLayout&) const = default;
};

using LayoutRegistry = std::map<std::string, RecordMapLayout>;

inline constexpr int kLayoutFormatVersion = 1;

// Throws Error(kParseError) with a line number, Error(kVersionMismatch), or
// Error(kInvalidConfig) for a layout that fails validation.
LayoutRegistry ParseLayoutFile(std::string_view text);

// Source text of data/layouts.txt.
std::string_view BuiltinLayoutText();

// The built-in registry: heuristic, random-order, random-order-and-layout,
// small-maps, no-blue.
const LayoutRegistry& BuiltinLayoutRegistry();

// Throws Error(kInvalidConfig) for an unknown name.
const RecordMapLayout& FindLayout(const LayoutRegistry& registry,
                                  const std::string& name);

// Deterministic reshuffles used by the random layouts.
LayoutSpec ShuffleCharacterOrder(const LayoutSpec& base, uint64_t seed);
LayoutSpec ShuffleCharacterLayout(const LayoutSpec& base, uint64_t seed);

}  // namespace disambig

#endif  // DISAMBIG_LAYOUT_H_
