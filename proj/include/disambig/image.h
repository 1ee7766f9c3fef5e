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

#ifndef DISAMBIG_IMAGE_H_
#define DISAMBIG_IMAGE_H_

#include <algorithm>
#include <span>
#include <vector>

namespace disambig {

struct Point {
  int x = 0;
  int y = 0;

  bool operator==(const Point&) const = default;
  auto operator<=>(const Point&) const = default;
};

enum class Channel { kRed = 0, kGreen = 1, kBlue = 2 };

inline constexpr int kNumChannels = 3;

// Planar (channel-major) RGB image with values in [0, 1]. The planar layout
// is what the classifier consumes directly.
class ImageTensor {
 public:
  ImageTensor() = default;
  ImageTensor(int width, int height)
      : width_(width),
        height_(height),
        values_(static_cast<size_t>(kNumChannels) * width * height, 0.0f) {}

  int width() const { return width_; }
  int height() const { return height_; }

  float at(Channel c, int x, int y) const { return values_[Index(c, x, y)]; }
  void set(Channel c, int x, int y, float v) {
    values_[Index(c, x, y)] = std::clamp(v, 0.0f, 1.0f);
  }
  // Adds `amount` and saturates at 1.
  void Accumulate(Channel c, int x, int y, float amount) {
    float& v = values_[Index(c, x, y)];
    v = std::min(1.0f, v + amount);
  }

  std::span<const float> plane(Channel c) const {
    return std::span<const float>(values_).subspan(PlaneOffset(c), PlaneSize());
  }
  std::span<float> plane(Channel c) {
    return std::span<float>(values_).subspan(PlaneOffset(c), PlaneSize());
  }

  std::span<const float> values() const { return values_; }
  std::span<float> mutable_values() { return values_; }

  bool operator==(const ImageTensor&) const = default;

 private:
  size_t PlaneSize() const { return static_cast<size_t>(width_) * height_; }
  size_t PlaneOffset(Channel c) const {
    return static_cast<size_t>(c) * PlaneSize();
  }
  size_t Index(Channel c, int x, int y) const {
    return PlaneOffset(c) + static_cast<size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<float> values_;
};

}  // namespace disambig

#endif  // DISAMBIG_IMAGE_H_
