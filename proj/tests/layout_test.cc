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

#include <gtest/gtest.h>

#include <set>

#include "disambig/base/error.h"
#include "disambig/layout.h"

namespace disambig {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kUsage;
}

std::set<char> Chars(const LayoutSpec& s) {
  std::set<char> out;
  for (const auto& [c, p] : s.char_coords) out.insert(c);
  return out;
}

std::set<char> Range(char lo, char hi) {
  std::set<char> out;
  for (char c = lo; c <= hi; ++c) out.insert(c);
  return out;
}

TEST(RegistryTest, HasTheFiveVariants) {
  const LayoutRegistry& reg = BuiltinLayoutRegistry();
  for (const char* name : {"heuristic", "random-order",
                           "random-order-and-layout", "small-maps", "no-blue"}) {
    ASSERT_TRUE(reg.count(name)) << name;
    EXPECT_NO_THROW(reg.at(name).Validate()) << name;
  }
  EXPECT_EQ(reg.at("heuristic").canvas_width, 31);
  EXPECT_EQ(reg.at("heuristic").canvas_height, 31);
  EXPECT_EQ(reg.at("small-maps").canvas_width, 19);
  EXPECT_EQ(reg.at("small-maps").canvas_height, 19);
}

TEST(RegistryTest, IsDeterministic) {
  EXPECT_EQ(ParseLayoutFile(BuiltinLayoutText()), BuiltinLayoutRegistry());
  std::set<std::string> prints;
  for (const auto& [name, layout] : BuiltinLayoutRegistry()) {
    EXPECT_TRUE(prints.insert(layout.Fingerprint()).second) << name;
  }
}

TEST(RegistryTest, CharacterSetsPerSlot) {
  const RecordMapLayout& h = FindLayout(BuiltinLayoutRegistry(), "heuristic");
  const std::set<char> letters = Range('A', 'Z');
  std::set<char> alnum = letters;
  for (char c : Range('0', '9')) alnum.insert(c);
  EXPECT_EQ(Chars(h.slots.at(FieldRole::kLast).spec), letters);
  EXPECT_EQ(Chars(h.slots.at(FieldRole::kCity).spec), letters);
  EXPECT_EQ(Chars(h.slots.at(FieldRole::kIpc).spec), alnum);
  EXPECT_EQ(Chars(h.slots.at(FieldRole::kAssignees).spec), letters);
  const LayoutSpec& large = h.slots.at(FieldRole::kCoInventors).spec;
  const LayoutSpec& name = h.slots.at(FieldRole::kFirst).spec;
  EXPECT_GT(large.grid_width * large.grid_height,
            name.grid_width * name.grid_height);
  EXPECT_FLOAT_EQ(name.per_pixel_increment, 0.25f);
  EXPECT_FLOAT_EQ(large.per_pixel_increment, 0.1f);
}

TEST(RegistryTest, HeuristicVowelsSitNearTheCentre) {
  const LayoutSpec& s =
      FindLayout(BuiltinLayoutRegistry(), "heuristic").slots.at(FieldRole::kFirst).spec;
  const double cx = (s.grid_width - 1) / 2.0, cy = (s.grid_height - 1) / 2.0;
  const auto dist = [&](char c) {
    const Point p = *s.Find(c);
    return std::abs(p.x - cx) + std::abs(p.y - cy);
  };
  double vowels = 0, consonants = 0;
  int nv = 0, nc = 0;
  for (char c = 'A'; c <= 'Z'; ++c) {
    if (std::string_view("AEIOU").find(c) != std::string_view::npos) {
      vowels += dist(c);
      ++nv;
    } else {
      consonants += dist(c);
      ++nc;
    }
  }
  EXPECT_LT(vowels / nv, consonants / nc);
  // S and Z are neighbours.
  const Point s_pt = *s.Find('S'), z_pt = *s.Find('Z');
  EXPECT_LE(std::abs(s_pt.x - z_pt.x) + std::abs(s_pt.y - z_pt.y), 1);
}

TEST(RegistryTest, VariantsRelateToTheirBase) {
  const LayoutRegistry& reg = BuiltinLayoutRegistry();
  const auto& h = reg.at("heuristic");
  const auto& ro = reg.at("random-order");
  for (FieldRole role : kAllFieldRoles) {
    const LayoutSpec& a = h.slots.at(role).spec;
    const LayoutSpec& b = ro.slots.at(role).spec;
    // Same pixels, reassigned characters.
    std::set<Point> pa, pb;
    for (const auto& [c, p] : a.char_coords) pa.insert(p);
    for (const auto& [c, p] : b.char_coords) pb.insert(p);
    EXPECT_EQ(pa, pb);
    EXPECT_NE(a.char_coords, b.char_coords);
    EXPECT_EQ(h.slots.at(role).offset, ro.slots.at(role).offset);
  }
  for (const auto& [role, slot] : reg.at("no-blue").slots) {
    EXPECT_FALSE(slot.spec.use_blue_leading_bigram);
    EXPECT_EQ(slot.spec.char_coords, ro.slots.at(role).spec.char_coords);
  }
  for (const auto& [role, slot] : h.slots) {
    EXPECT_TRUE(slot.spec.use_blue_leading_bigram);
  }
  const auto& small = reg.at("small-maps");
  EXPECT_EQ(small.slots.at(FieldRole::kCoInventors).spec.grid_width, 5);
  EXPECT_EQ(small.slots.at(FieldRole::kAssignees).spec.grid_width, 5);
}

TEST(ShuffleTest, IsSeededAndInjective) {
  const LayoutSpec& base =
      FindLayout(BuiltinLayoutRegistry(), "heuristic").slots.at(FieldRole::kIpc).spec;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const LayoutSpec a = ShuffleCharacterLayout(base, seed);
    EXPECT_EQ(a, ShuffleCharacterLayout(base, seed));
    EXPECT_NO_THROW(a.Validate());
    EXPECT_EQ(Chars(a), Chars(base));
    const LayoutSpec b = ShuffleCharacterOrder(base, seed);
    EXPECT_NO_THROW(b.Validate());
  }
  EXPECT_NE(ShuffleCharacterOrder(base, 1), ShuffleCharacterOrder(base, 2));
}

TEST(LayoutValidateTest, RejectsBadSpecs) {
  LayoutSpec s;
  s.name = "t";
  s.grid_width = 2;
  s.grid_height = 2;
  s.char_coords = {{'A', {0, 0}}, {'B', {2, 0}}};
  EXPECT_EQ(CodeOf([&] { s.Validate(); }), ErrorCode::kInvalidConfig);
  s.char_coords = {{'A', {0, 0}}, {'B', {0, 0}}};
  EXPECT_EQ(CodeOf([&] { s.Validate(); }), ErrorCode::kInvalidConfig);
  s.char_coords = {{'A', {0, 0}}};
  s.per_pixel_increment = 0.0f;
  EXPECT_EQ(CodeOf([&] { s.Validate(); }), ErrorCode::kInvalidConfig);
  s.per_pixel_increment = 1.0f;
  EXPECT_NO_THROW(s.Validate());

  RecordMapLayout l = FindLayout(BuiltinLayoutRegistry(), "heuristic");
  l.slots.at(FieldRole::kMiddle).offset = {0, 0};  // on top of First
  EXPECT_EQ(CodeOf([&] { l.Validate(); }), ErrorCode::kInvalidConfig);
  l = FindLayout(BuiltinLayoutRegistry(), "heuristic");
  l.slots.erase(FieldRole::kCity);
  EXPECT_EQ(CodeOf([&] { l.Validate(); }), ErrorCode::kInvalidConfig);
  l = FindLayout(BuiltinLayoutRegistry(), "heuristic");
  l.slots.at(FieldRole::kAssignees).offset = {5, 25};
  EXPECT_EQ(CodeOf([&] { l.Validate(); }), ErrorCode::kInvalidConfig);
}

TEST(ParseLayoutFileTest, Errors) {
  EXPECT_EQ(CodeOf([] { ParseLayoutFile("format_version = 2\n"); }),
            ErrorCode::kVersionMismatch);
  EXPECT_EQ(CodeOf([] {
              ParseLayoutFile("format_version = 1\n[stringmap a]\nsize = 2 1\n"
                              "row = AA\n");
            }),
            ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] {
              ParseLayoutFile("format_version = 1\n[stringmap a]\nsize = 2 2\n"
                              "row = AB\n");
            }),
            ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { ParseLayoutFile("format_version = 1\n[bogus x]\n"); }),
            ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { FindLayout(BuiltinLayoutRegistry(), "nope"); }),
            ErrorCode::kInvalidConfig);
}

TEST(ParseLayoutFileTest, CustomFile) {
  const std::string text =
      "format_version = 1\n"
      "[stringmap g]\nsize = 2 2\nincrement = 0.5\nblue = false\n"
      "row = AB\nrow = C.\n"
      "[layout tiny]\ncanvas = 8 4\n"
      "slot first = g 0 0\nslot middle = g 2 0\nslot last = g 4 0\n"
      "slot city = g 6 0\nslot ipc = g 0 2\nslot coinventors = g 2 2\n"
      "slot assignees = g 4 2\n";
  const LayoutRegistry reg = ParseLayoutFile(text);
  ASSERT_EQ(reg.size(), 1u);
  const RecordMapLayout& l = reg.at("tiny");
  EXPECT_NO_THROW(l.Validate());
  const LayoutSpec& g = l.slots.at(FieldRole::kFirst).spec;
  EXPECT_EQ(*g.Find('C'), (Point{0, 1}));
  EXPECT_EQ(g.Find('D'), nullptr);
  EXPECT_FALSE(g.use_blue_leading_bigram);
  EXPECT_FLOAT_EQ(g.per_pixel_increment, 0.5f);
}

}  // namespace
}  // namespace disambig
