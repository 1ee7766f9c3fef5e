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

// Randomized checks of the rendering invariants, shared by the unit tests
// and the acceptance run.

#ifndef DISAMBIG_TESTS_RENDER_INVARIANTS_H_
#define DISAMBIG_TESTS_RENDER_INVARIANTS_H_

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "disambig/base/rng.h"
#include "disambig/layout.h"
#include "disambig/render.h"
#include "test_util.h"

namespace disambig::testing {

// Letters, digits and the odd space; many values for the list fields so
// that overlays saturate.
inline Record RandomRenderRecord(Rng& rng, const std::string& id) {
  static constexpr std::string_view kChars =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 ";
  Record r;
  r.record_id = id;
  r.first_name = RandomWord(rng, kChars, 0, 8);
  r.middle_name = RandomWord(rng, kChars, 0, 3);
  r.last_name = RandomWord(rng, kLetters, 1, 10);
  r.city = RandomWord(rng, kChars, 0, 12);
  const auto list = [&](std::vector<std::string>* out, int max_items) {
    const int n = rng.UniformInt(0, max_items);
    for (int i = 0; i < n; ++i) out->push_back(RandomWord(rng, kChars, 1, 12));
  };
  list(&r.ipc_codes, 4);
  list(&r.co_inventor_last_names, rng.Bernoulli(0.1) ? 40 : 4);
  list(&r.assignees, 3);
  return r;
}

inline std::set<Point> AsSet(const std::vector<Point>& v) {
  return std::set<Point>(v.begin(), v.end());
}

struct InvariantFailure {
  std::string what;
  int iteration = -1;
  bool ok() const { return what.empty(); }
};

// Runs `iterations` randomized cases of every rendering invariant against
// `layout`.
inline InvariantFailure CheckRenderInvariants(const RecordMapLayout& layout,
                                              uint64_t seed, int iterations) {
  Rng rng(seed);
  int max_grid = 1;
  for (const auto& [role, slot] : layout.slots) {
    max_grid = std::max({max_grid, slot.spec.grid_width, slot.spec.grid_height});
  }
  for (int it = 0; it < iterations; ++it) {
    const Record a = RandomRenderRecord(rng, "a");
    const Record b = RandomRenderRecord(rng, "b");
    const ImageTensor ab = RenderComparisonMap(a, b, layout);
    const ImageTensor ba = RenderComparisonMap(b, a, layout);

    if (ab.width() != layout.canvas_width ||
        ab.height() != layout.canvas_height) {
      return {"canvas size", it};
    }
    // Values stay in [0, 1].
    for (float v : ab.values()) {
      if (!(v >= 0.0f && v <= 1.0f)) return {"clamp", it};
    }
    // Swapping the records swaps red and green.
    if (!(ab == SwapRedGreen(ba))) return {"channel swap symmetry", it};

    // A record overlaps itself at least as much as any other record.
    const ImageTensor aa = RenderComparisonMap(a, a, layout);
    if (!std::ranges::equal(aa.plane(Channel::kRed),
                            aa.plane(Channel::kGreen))) {
      return {"self-comparison planes differ", it};
    }
    if (YellowOverlap(aa) < YellowOverlap(ab)) {
      return {"self-match maximality", it};
    }

    // Permuting multi-value fields changes nothing.
    Record shuffled = a;
    rng.Shuffle(std::span<std::string>(shuffled.co_inventor_last_names));
    rng.Shuffle(std::span<std::string>(shuffled.assignees));
    rng.Shuffle(std::span<std::string>(shuffled.ipc_codes));
    if (!(RenderComparisonMap(shuffled, b, layout) == ab)) {
      return {"word-order invariance", it};
    }

    // Segment pixel sets do not depend on direction.
    const Point p{rng.UniformInt(0, max_grid - 1),
                  rng.UniformInt(0, max_grid - 1)};
    const Point q{rng.UniformInt(0, max_grid - 1),
                  rng.UniformInt(0, max_grid - 1)};
    if (AsSet(RasterizeSegment(p, q)) != AsSet(RasterizeSegment(q, p))) {
      return {"rasterization symmetry", it};
    }
  }
  return {};
}

}  // namespace disambig::testing

#endif  // DISAMBIG_TESTS_RENDER_INVARIANTS_H_
