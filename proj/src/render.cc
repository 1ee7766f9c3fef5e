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

#include "disambig/render.h"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "disambig/base/error.h"

namespace disambig {
namespace {

void RenderWords(const std::vector<std::string>& words, const Slot& slot,
                 Channel primary, ImageTensor* canvas) {
  for (const std::string& w : words) {
    RenderStringMap(w, slot.spec, slot.offset, primary, canvas);
  }
}

void RenderWord(const std::string& word, const Slot& slot, Channel primary,
                ImageTensor* canvas) {
  if (!word.empty()) {
    RenderStringMap(word, slot.spec, slot.offset, primary, canvas);
  }
}

}  // namespace

std::vector<Point> RasterizeSegment(Point p0, Point p1) {
  const bool reversed = p1 < p0;
  if (reversed) std::swap(p0, p1);

  const int dx = std::abs(p1.x - p0.x);
  const int dy = std::abs(p1.y - p0.y);
  const int sx = p1.x >= p0.x ? 1 : -1;
  const int sy = p1.y >= p0.y ? 1 : -1;
  const bool x_major = dx >= dy;
  const int major = x_major ? dx : dy;
  const int minor = x_major ? dy : dx;

  std::vector<Point> out;
  out.reserve(static_cast<size_t>(major) + 1);
  // Minor offset at step i is floor((2*i*minor + major) / (2*major)); the
  // remainder is tracked incrementally.
  int offset = 0;
  int remainder = major;
  for (int i = 0; i <= major; ++i) {
    if (x_major) {
      out.push_back({p0.x + sx * i, p0.y + sy * offset});
    } else {
      out.push_back({p0.x + sx * offset, p0.y + sy * i});
    }
    remainder += 2 * minor;
    while (major > 0 && remainder >= 2 * major) {
      remainder -= 2 * major;
      ++offset;
    }
  }
  if (reversed) std::reverse(out.begin(), out.end());
  return out;
}

void RenderStringMap(std::string_view word, const LayoutSpec& layout,
                     Point offset, Channel primary, ImageTensor* canvas) {
  if (offset.x < 0 || offset.y < 0 ||
      offset.x + layout.grid_width > canvas->width() ||
      offset.y + layout.grid_height > canvas->height()) {
    throw Error(ErrorCode::kOffsetOutOfBounds,
                "string-map '" + layout.name + "' at (" +
                    std::to_string(offset.x) + "," + std::to_string(offset.y) +
                    ") does not fit a " + std::to_string(canvas->width()) +
                    "x" + std::to_string(canvas->height()) + " canvas");
  }
  std::vector<Point> letters;
  letters.reserve(word.size());
  for (char c : word) {
    if (const Point* p = layout.Find(c)) letters.push_back(*p);
  }
  if (letters.empty()) return;

  const float inc = layout.per_pixel_increment;
  const auto add = [&](Point p, Channel c) {
    canvas->Accumulate(c, offset.x + p.x, offset.y + p.y, inc);
  };

  if (letters.size() == 1) {
    add(letters[0], primary);
    if (layout.use_blue_leading_bigram) add(letters[0], Channel::kBlue);
    return;
  }
  add(letters.front(), primary);
  add(letters.back(), primary);
  for (size_t i = 1; i < letters.size(); ++i) {
    for (Point p : RasterizeSegment(letters[i - 1], letters[i])) {
      add(p, primary);
    }
  }
  if (layout.use_blue_leading_bigram) {
    for (Point p : RasterizeSegment(letters[0], letters[1])) {
      add(p, Channel::kBlue);
    }
  }
}

ImageTensor RenderRecordMap(const Record& r, const RecordMapLayout& layout,
                            Channel primary) {
  ImageTensor canvas(layout.canvas_width, layout.canvas_height);
  const auto& slots = layout.slots;
  RenderWord(r.first_name, slots.at(FieldRole::kFirst), primary, &canvas);
  RenderWord(r.middle_name, slots.at(FieldRole::kMiddle), primary, &canvas);
  RenderWord(r.last_name, slots.at(FieldRole::kLast), primary, &canvas);
  RenderWord(r.city, slots.at(FieldRole::kCity), primary, &canvas);
  RenderWords(r.ipc_codes, slots.at(FieldRole::kIpc), primary, &canvas);
  RenderWords(r.co_inventor_last_names, slots.at(FieldRole::kCoInventors),
              primary, &canvas);
  RenderWords(r.assignees, slots.at(FieldRole::kAssignees), primary, &canvas);
  return canvas;
}

ImageTensor ComposeComparisonMap(const ImageTensor& red_map_a,
                                 const ImageTensor& red_map_b) {
  ImageTensor out(red_map_a.width(), red_map_a.height());
  const auto red_a = red_map_a.plane(Channel::kRed);
  const auto red_b = red_map_b.plane(Channel::kRed);
  const auto blue_a = red_map_a.plane(Channel::kBlue);
  const auto blue_b = red_map_b.plane(Channel::kBlue);
  auto red = out.plane(Channel::kRed);
  auto green = out.plane(Channel::kGreen);
  auto blue = out.plane(Channel::kBlue);
  for (size_t i = 0; i < red.size(); ++i) {
    red[i] = red_a[i];
    green[i] = red_b[i];
    blue[i] = std::min(1.0f, blue_a[i] + blue_b[i]);
  }
  return out;
}

ImageTensor RenderComparisonMap(const Record& a, const Record& b,
                                const RecordMapLayout& layout) {
  const ImageTensor map_a = RenderRecordMap(a, layout, Channel::kRed);
  const ImageTensor map_b = RenderRecordMap(b, layout, Channel::kGreen);
  ImageTensor out(layout.canvas_width, layout.canvas_height);
  std::ranges::copy(map_a.plane(Channel::kRed),
                    out.plane(Channel::kRed).begin());
  std::ranges::copy(map_b.plane(Channel::kGreen),
                    out.plane(Channel::kGreen).begin());
  const auto blue_a = map_a.plane(Channel::kBlue);
  const auto blue_b = map_b.plane(Channel::kBlue);
  auto blue = out.plane(Channel::kBlue);
  for (size_t i = 0; i < blue.size(); ++i) {
    blue[i] = std::min(1.0f, blue_a[i] + blue_b[i]);
  }
  return out;
}

ImageTensor SwapRedGreen(const ImageTensor& t) {
  ImageTensor out = t;
  std::ranges::copy(t.plane(Channel::kGreen), out.plane(Channel::kRed).begin());
  std::ranges::copy(t.plane(Channel::kRed), out.plane(Channel::kGreen).begin());
  return out;
}

double YellowOverlap(const ImageTensor& t) {
  const auto red = t.plane(Channel::kRed);
  const auto green = t.plane(Channel::kGreen);
  double sum = 0.0;
  for (size_t i = 0; i < red.size(); ++i) sum += std::min(red[i], green[i]);
  return sum;
}

std::vector<ImageTensor> RenderComparisonMaps(std::span<const Record> records,
                                              std::span<const PairIndex> pairs,
                                              const RecordMapLayout& layout) {
  std::vector<char> needed(records.size(), 0);
  for (const PairIndex& p : pairs) needed[p.a] = needed[p.b] = 1;

  std::vector<ImageTensor> maps(records.size());
  const auto n_records = static_cast<std::ptrdiff_t>(records.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n_records; ++i) {
    if (needed[i]) maps[i] = RenderRecordMap(records[i], layout, Channel::kRed);
  }

  std::vector<ImageTensor> out(pairs.size());
  const auto n_pairs = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n_pairs; ++i) {
    out[i] = ComposeComparisonMap(maps[pairs[i].a], maps[pairs[i].b]);
  }
  return out;
}

std::vector<ImageTensor> RenderComparisonMapsSerial(
    std::span<const Record> records, std::span<const PairIndex> pairs,
    const RecordMapLayout& layout) {
  std::vector<ImageTensor> out;
  out.reserve(pairs.size());
  for (const PairIndex& p : pairs) {
    out.push_back(RenderComparisonMap(records[p.a], records[p.b], layout));
  }
  return out;
}

}  // namespace disambig
