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

#include "disambig/nn/architecture.h"

#include <charconv>

#include "disambig/base/csv.h"
#include "disambig/base/error.h"

namespace disambig::nn {
namespace {

int ParseInt(std::string_view s, std::string_view what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParseError,
                "bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Architecture Architecture::Reference(int width, int height) {
  Architecture a;
  a.input = {3, height, width};
  a.conv = {{16, true}, {32, true}};
  a.hidden = {128};
  a.outputs = 2;
  return a;
}

Shape Architecture::ConvInput(size_t i) const {
  Shape s = input;
  for (size_t k = 0; k < i; ++k) {
    s = {conv[k].out_channels, s.h - 2, s.w - 2};
    if (conv[k].pool) s = {s.c, s.h / 2, s.w / 2};
  }
  return s;
}

std::vector<int> Architecture::DenseWidths() const {
  std::vector<int> widths = hidden;
  widths.push_back(outputs);
  return widths;
}

int Architecture::DenseInput(size_t j) const {
  return j == 0 ? FlatSize() : hidden[j - 1];
}

void Architecture::Validate() const {
  if (input.c != 3) {
    throw Error(ErrorCode::kInvalidConfig, "input must have 3 channels");
  }
  if (outputs != 2) {
    throw Error(ErrorCode::kInvalidConfig, "output layer must have 2 units");
  }
  Shape s = input;
  for (size_t k = 0; k < conv.size(); ++k) {
    if (conv[k].out_channels <= 0 || s.h < 3 || s.w < 3) {
      throw Error(ErrorCode::kInvalidConfig,
                  "conv layer " + std::to_string(k) + " does not fit " +
                      Describe());
    }
    s = {conv[k].out_channels, s.h - 2, s.w - 2};
    if (conv[k].pool) {
      if (s.h < 2 || s.w < 2) {
        throw Error(ErrorCode::kInvalidConfig,
                    "pool after conv layer " + std::to_string(k) +
                        " does not fit " + Describe());
      }
      s = {s.c, s.h / 2, s.w / 2};
    }
  }
  for (int width : hidden) {
    if (width <= 0) {
      throw Error(ErrorCode::kInvalidConfig, "dense width must be positive");
    }
  }
}

std::string Architecture::Describe() const {
  std::string out = "in=" + std::to_string(input.c) + "x" +
                    std::to_string(input.h) + "x" + std::to_string(input.w);
  out += ";conv=";
  for (size_t k = 0; k < conv.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(conv[k].out_channels);
    if (conv[k].pool) out += "p";
  }
  out += ";fc=";
  for (size_t k = 0; k < hidden.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(hidden[k]);
  }
  out += ";out=" + std::to_string(outputs);
  return out;
}

Architecture Architecture::Parse(std::string_view text) {
  Architecture a;
  a.conv.clear();
  a.hidden.clear();
  bool saw_input = false;
  for (const std::string& part : SplitString(text, ';')) {
    const size_t eq = part.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kParseError, "bad architecture field '" + part +
                                              "'");
    }
    const std::string key = part.substr(0, eq);
    const std::string value = part.substr(eq + 1);
    if (key == "in") {
      const auto dims = SplitString(value, 'x');
      if (dims.size() != 3) {
        throw Error(ErrorCode::kParseError, "bad input shape '" + value + "'");
      }
      a.input = {ParseInt(dims[0], "channels"), ParseInt(dims[1], "height"),
                 ParseInt(dims[2], "width")};
      saw_input = true;
    } else if (key == "conv") {
      if (value.empty()) continue;
      for (std::string layer : SplitString(value, ',')) {
        ConvLayer c;
        if (!layer.empty() && layer.back() == 'p') {
          c.pool = true;
          layer.pop_back();
        }
        c.out_channels = ParseInt(layer, "conv width");
        a.conv.push_back(c);
      }
    } else if (key == "fc") {
      if (value.empty()) continue;
      for (const std::string& width : SplitString(value, ',')) {
        a.hidden.push_back(ParseInt(width, "dense width"));
      }
    } else if (key == "out") {
      a.outputs = ParseInt(value, "output width");
    } else {
      throw Error(ErrorCode::kParseError, "unknown architecture key '" + key +
                                              "'");
    }
  }
  if (!saw_input) {
    throw Error(ErrorCode::kParseError, "architecture has no input shape");
  }
  return a;
}

}  // namespace disambig::nn
