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

// Text-to-image rendering.
//
// A word is drawn on a string-map by adding colour to the pixels of its
// first and last letters and to every pixel on the line joining each pair of
// consecutive letters. The first bi-gram is drawn again in blue. A record is
// drawn as one string-map per field (a record-map); two record-maps stacked
// in the red and green channels, with their blue highlights summed, form the
// comparison-map the classifier sees.

#ifndef DISAMBIG_RENDER_H_
#define DISAMBIG_RENDER_H_

#include <span>
#include <string_view>
#include <vector>

#include "disambig/image.h"
#include "disambig/ingest.h"
#include "disambig/layout.h"

namespace disambig {

// 8-connected midpoint line from p0 to p1, both endpoints included. Along the
// major axis every integer step gets the nearest minor coordinate; exact
// halves round away from the lexicographically smaller endpoint, which makes
// the pixel set independent of direction.
std::vector<Point> RasterizeSegment(Point p0, Point p1);

// Draws `word` into `canvas` with its grid's origin at `offset`. Characters
// missing from the layout are skipped and lines bridge over them. Throws
// Error(kOffsetOutOfBounds) if the grid does not fit on the canvas.
void RenderStringMap(std::string_view word, const LayoutSpec& layout,
                     Point offset, Channel primary, ImageTensor* canvas);

// `primary` must be kRed or kGreen.
ImageTensor RenderRecordMap(const Record& r, const RecordMapLayout& layout,
                            Channel primary);

// red = record-map of a, green = record-map of b, blue = clamped sum of both
// leading bi-gram highlights.
ImageTensor RenderComparisonMap(const Record& a, const Record& b,
                                const RecordMapLayout& layout);

// Stacks two red-primary record-maps into a comparison-map.
ImageTensor ComposeComparisonMap(const ImageTensor& red_map_a,
                                 const ImageTensor& red_map_b);

ImageTensor SwapRedGreen(const ImageTensor& t);

// Sum over pixels of min(red, green): the "yellow" overlap mass.
double YellowOverlap(const ImageTensor& t);

struct PairIndex {
  size_t a;
  size_t b;
};

// Comparison-maps for many pairs of `records`. Record-maps are drawn once per
// record and shared. Parallel over records and pairs with OpenMP; the output
// is identical to RenderComparisonMapsSerial for any thread count.
std::vector<ImageTensor> RenderComparisonMaps(std::span<const Record> records,
                                              std::span<const PairIndex> pairs,
                                              const RecordMapLayout& layout);

// Reference implementation: one RenderComparisonMap call per pair.
std::vector<ImageTensor> RenderComparisonMapsSerial(
    std::span<const Record> records, std::span<const PairIndex> pairs,
    const RecordMapLayout& layout);

}  // namespace disambig

#endif  // DISAMBIG_RENDER_H_
