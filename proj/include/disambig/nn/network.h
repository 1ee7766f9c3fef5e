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

// Forward and backward passes, templated on the scalar so that the gradient
// checker can run the same code in double precision.

#ifndef DISAMBIG_NN_NETWORK_H_
#define DISAMBIG_NN_NETWORK_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "disambig/base/error.h"
#include "disambig/nn/architecture.h"
#include "disambig/nn/kernels.h"

namespace disambig::nn {

// One weight and one bias array per layer: conv layers first, then dense.
template <typename T>
struct Params {
  std::vector<std::vector<T>> weights;
  std::vector<std::vector<T>> biases;

  size_t NumValues() const {
    size_t n = 0;
    for (const auto& w : weights) n += w.size();
    for (const auto& b : biases) n += b.size();
    return n;
  }

  void SetZero() {
    for (auto& w : weights) std::ranges::fill(w, T{0});
    for (auto& b : biases) std::ranges::fill(b, T{0});
  }

  template <typename U>
  Params<U> Cast() const {
    Params<U> out;
    for (const auto& w : weights) out.weights.emplace_back(w.begin(), w.end());
    for (const auto& b : biases) out.biases.emplace_back(b.begin(), b.end());
    return out;
  }

  bool operator==(const Params&) const = default;
};

// Zero-filled parameters with the shapes `arch` requires.
template <typename T>
Params<T> ZeroParams(const Architecture& arch) {
  Params<T> p;
  for (size_t i = 0; i < arch.conv.size(); ++i) {
    const int c_in = arch.ConvInput(i).c;
    const int c_out = arch.conv[i].out_channels;
    p.weights.emplace_back(static_cast<size_t>(c_out) * c_in * kTaps, T{0});
    p.biases.emplace_back(static_cast<size_t>(c_out), T{0});
  }
  const std::vector<int> widths = arch.DenseWidths();
  for (size_t j = 0; j < widths.size(); ++j) {
    p.weights.emplace_back(static_cast<size_t>(widths[j]) * arch.DenseInput(j),
                           T{0});
    p.biases.emplace_back(static_cast<size_t>(widths[j]), T{0});
  }
  return p;
}

// Per-sample activations kept for the backward pass.
template <typename T>
struct Workspace {
  std::vector<std::vector<T>> conv_in;  // input of conv layer i
  std::vector<std::vector<T>> conv_act;  // post-ReLU output of conv layer i
  std::vector<std::vector<int>> pool_idx;
  std::vector<std::vector<T>> dense_in;  // input of dense layer j
  std::vector<T> probs;
  std::vector<T> grad;
  std::vector<T> grad_next;
};

// Computes class probabilities for one planar input into ws->probs.
template <typename T>
void Forward(const Architecture& arch, const Params<T>& p,
             std::span<const T> input, Workspace<T>* ws) {
  if (static_cast<int>(input.size()) != arch.input.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "input of " + std::to_string(input.size()) +
                    " values does not fit " + arch.Describe());
  }
  const size_t n_conv = arch.conv.size();
  ws->conv_in.resize(n_conv);
  ws->conv_act.resize(n_conv);
  ws->pool_idx.resize(n_conv);
  std::vector<T> cur(input.begin(), input.end());
  for (size_t i = 0; i < n_conv; ++i) {
    const Shape s = arch.ConvInput(i);
    const int c_out = arch.conv[i].out_channels;
    ws->conv_in[i] = std::move(cur);
    std::vector<T>& act = ws->conv_act[i];
    act.resize(static_cast<size_t>(c_out) * (s.h - 2) * (s.w - 2));
    Conv3x3Forward(ws->conv_in[i].data(), s.c, s.h, s.w, p.weights[i].data(),
                   p.biases[i].data(), c_out, act.data());
    for (T& v : act) v = std::max(v, T{0});
    if (arch.conv[i].pool) {
      const int h = s.h - 2;
      const int w = s.w - 2;
      cur.assign(static_cast<size_t>(c_out) * (h / 2) * (w / 2), T{0});
      ws->pool_idx[i].resize(cur.size());
      MaxPool2Forward(act.data(), c_out, h, w, cur.data(),
                      ws->pool_idx[i].data());
    } else {
      cur = act;
    }
  }
  const std::vector<int> widths = arch.DenseWidths();
  ws->dense_in.resize(widths.size());
  for (size_t j = 0; j < widths.size(); ++j) {
    const size_t layer = n_conv + j;
    ws->dense_in[j] = std::move(cur);
    cur.assign(static_cast<size_t>(widths[j]), T{0});
    DenseForward(p.weights[layer].data(), p.biases[layer].data(),
                 ws->dense_in[j].data(), arch.DenseInput(j), widths[j],
                 cur.data());
    if (j + 1 < widths.size()) {
      for (T& v : cur) v = std::max(v, T{0});
    }
  }
  // Softmax over the logits in `cur`.
  const T top = *std::ranges::max_element(cur);
  T sum = 0;
  for (T& v : cur) {
    v = std::exp(v - top);
    sum += v;
  }
  for (T& v : cur) v /= sum;
  ws->probs = std::move(cur);
}

template <typename T>
T CrossEntropy(std::span<const T> probs, int label) {
  return -std::log(std::max(probs[label], T{1e-30}));
}

// Back-propagates the cross-entropy loss of the last Forward() for `label`
// and adds `scale` times the parameter gradient into `grads`.
template <typename T>
void Backward(const Architecture& arch, const Params<T>& p, int label, T scale,
              Workspace<T>* ws, Params<T>* grads) {
  std::vector<T>& g = ws->grad;
  std::vector<T>& g_next = ws->grad_next;
  g.assign(ws->probs.begin(), ws->probs.end());
  g[label] -= T{1};
  for (T& v : g) v *= scale;

  const size_t n_conv = arch.conv.size();
  const std::vector<int> widths = arch.DenseWidths();
  for (size_t j = widths.size(); j-- > 0;) {
    const size_t layer = n_conv + j;
    if (j + 1 < widths.size()) {
      // ReLU mask from the stored output, which is the next layer's input.
      const std::vector<T>& out = ws->dense_in[j + 1];
      for (size_t k = 0; k < g.size(); ++k) {
        if (out[k] <= T{0}) g[k] = T{0};
      }
    }
    const int n_in = arch.DenseInput(j);
    const bool need_input_grad = j > 0 || n_conv > 0;
    g_next.assign(static_cast<size_t>(n_in), T{0});
    DenseBackward(p.weights[layer].data(), ws->dense_in[j].data(), g.data(),
                  n_in, widths[j], grads->weights[layer].data(),
                  grads->biases[layer].data(),
                  need_input_grad ? g_next.data() : nullptr);
    std::swap(g, g_next);
  }

  for (size_t i = n_conv; i-- > 0;) {
    const Shape s = arch.ConvInput(i);
    const int c_out = arch.conv[i].out_channels;
    const std::vector<T>& act = ws->conv_act[i];
    if (arch.conv[i].pool) {
      g_next.assign(act.size(), T{0});
      MaxPool2Backward(g.data(), ws->pool_idx[i].data(), g.size(),
                       g_next.data());
      std::swap(g, g_next);
    }
    for (size_t k = 0; k < g.size(); ++k) {
      if (act[k] <= T{0}) g[k] = T{0};
    }
    Conv3x3BackwardWeights(ws->conv_in[i].data(), s.c, s.h, s.w, g.data(),
                           c_out, grads->weights[i].data(),
                           grads->biases[i].data());
    if (i > 0) {
      g_next.assign(static_cast<size_t>(s.size()), T{0});
      Conv3x3BackwardData(g.data(), c_out, p.weights[i].data(), s.c, s.h, s.w,
                          g_next.data());
      std::swap(g, g_next);
    }
  }
}

}  // namespace disambig::nn

#endif  // DISAMBIG_NN_NETWORK_H_
