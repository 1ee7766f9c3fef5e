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

#ifndef DISAMBIG_NN_ARCHITECTURE_H_
#define DISAMBIG_NN_ARCHITECTURE_H_

#include <string>
#include <string_view>
#include <vector>

namespace disambig::nn {

struct Shape {
  int c = 0;
  int h = 0;
  int w = 0;

  int size() const { return c * h * w; }
  bool operator==(const Shape&) const = default;
};

// 3x3 valid convolution, stride 1, ReLU, then an optional 2x2 max-pool.
struct ConvLayer {
  int out_channels = 0;
  bool pool = false;

  bool operator==(const ConvLayer&) const = default;
};

// Conv stack, then ReLU dense layers of `hidden` widths, then a softmax
// output layer of `outputs` units.
struct Architecture {
  Shape input{3, 31, 31};
  std::vector<ConvLayer> conv;
  std::vector<int> hidden;
  int outputs = 2;

  // The desk-scale network: conv16+pool, conv32+pool, dense128, softmax2.
  static Architecture Reference(int width, int height);

  // Throws Error(kInvalidConfig) when the input is not 3-channel, a layer
  // shrinks its input to nothing, or the output is not two units.
  void Validate() const;

  // Shape entering conv layer i; ConvInput(conv.size()) is the shape after
  // the last conv block.
  Shape ConvInput(size_t i) const;
  int FlatSize() const { return ConvInput(conv.size()).size(); }

  // Dense layer widths including the output layer.
  std::vector<int> DenseWidths() const;
  int DenseInput(size_t j) const;

  size_t NumLayers() const { return conv.size() + hidden.size() + 1; }

  // Stable text form, e.g. "in=3x31x31;conv=16p,32p;fc=128;out=2".
  std::string Describe() const;
  // Throws Error(kParseError).
  static Architecture Parse(std::string_view text);

  bool operator==(const Architecture&) const = default;
};

}  // namespace disambig::nn

#endif  // DISAMBIG_NN_ARCHITECTURE_H_
