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

// Layer kernels for the comparison-map classifier. All tensors are planar
// (channel, row, column) and weights are laid out as [out][in][3][3] for
// convolutions and [out][in] for dense layers.
//
// Each kernel exists twice. The versions in this namespace split work over
// output channels with OpenMP; every output element is owned by one thread
// and summed in a fixed order, so results do not depend on the thread count.
// The versions in `reference` are plain loops written straight from the
// definitions and serve as the test oracle and benchmark baseline.

#ifndef DISAMBIG_NN_KERNELS_H_
#define DISAMBIG_NN_KERNELS_H_

#include <cstddef>
#include <limits>

namespace disambig::nn {

inline constexpr int kKernel = 3;
inline constexpr int kTaps = kKernel * kKernel;

// out[o] (H-2 x W-2) = b[o] + sum_c w[o][c] (*) in[c]. Valid, stride 1.
template <typename T>
void Conv3x3Forward(const T* in, int c_in, int h, int w, const T* weights,
                    const T* bias, int c_out, T* out) {
  const int oh = h - 2;
  const int ow = w - 2;
#pragma omp parallel for schedule(static)
  for (int o = 0; o < c_out; ++o) {
    T* plane = out + static_cast<size_t>(o) * oh * ow;
    for (int i = 0; i < oh * ow; ++i) plane[i] = bias[o];
    for (int c = 0; c < c_in; ++c) {
      const T* src = in + static_cast<size_t>(c) * h * w;
      const T* k = weights + (static_cast<size_t>(o) * c_in + c) * kTaps;
      for (int ky = 0; ky < kKernel; ++ky) {
        for (int kx = 0; kx < kKernel; ++kx) {
          const T wv = k[ky * kKernel + kx];
          for (int y = 0; y < oh; ++y) {
            const T* row = src + static_cast<size_t>(y + ky) * w + kx;
            T* dst = plane + static_cast<size_t>(y) * ow;
            for (int x = 0; x < ow; ++x) dst[x] += wv * row[x];
          }
        }
      }
    }
  }
}

// Accumulates dL/dw and dL/db given dL/dout.
template <typename T>
void Conv3x3BackwardWeights(const T* in, int c_in, int h, int w,
                            const T* d_out, int c_out, T* d_weights,
                            T* d_bias) {
  const int oh = h - 2;
  const int ow = w - 2;
#pragma omp parallel for schedule(static)
  for (int o = 0; o < c_out; ++o) {
    const T* g = d_out + static_cast<size_t>(o) * oh * ow;
    T gsum = 0;
    for (int i = 0; i < oh * ow; ++i) gsum += g[i];
    d_bias[o] += gsum;
    for (int c = 0; c < c_in; ++c) {
      const T* src = in + static_cast<size_t>(c) * h * w;
      T* k = d_weights + (static_cast<size_t>(o) * c_in + c) * kTaps;
      for (int ky = 0; ky < kKernel; ++ky) {
        for (int kx = 0; kx < kKernel; ++kx) {
          T acc = 0;
          for (int y = 0; y < oh; ++y) {
            const T* row = src + static_cast<size_t>(y + ky) * w + kx;
            const T* grow = g + static_cast<size_t>(y) * ow;
            for (int x = 0; x < ow; ++x) acc += grow[x] * row[x];
          }
          k[ky * kKernel + kx] += acc;
        }
      }
    }
  }
}

// Writes dL/din (c_in x h x w) given dL/dout.
template <typename T>
void Conv3x3BackwardData(const T* d_out, int c_out, const T* weights,
                         int c_in, int h, int w, T* d_in) {
  const int oh = h - 2;
  const int ow = w - 2;
#pragma omp parallel for schedule(static)
  for (int c = 0; c < c_in; ++c) {
    T* dst = d_in + static_cast<size_t>(c) * h * w;
    for (int i = 0; i < h * w; ++i) dst[i] = 0;
    for (int o = 0; o < c_out; ++o) {
      const T* g = d_out + static_cast<size_t>(o) * oh * ow;
      const T* k = weights + (static_cast<size_t>(o) * c_in + c) * kTaps;
      for (int ky = 0; ky < kKernel; ++ky) {
        for (int kx = 0; kx < kKernel; ++kx) {
          const T wv = k[ky * kKernel + kx];
          for (int y = 0; y < oh; ++y) {
            T* row = dst + static_cast<size_t>(y + ky) * w + kx;
            const T* grow = g + static_cast<size_t>(y) * ow;
            for (int x = 0; x < ow; ++x) row[x] += wv * grow[x];
          }
        }
      }
    }
  }
}

// 2x2 max-pool, stride 2, floor semantics. `argmax` receives the flat input
// index chosen for each output; ties go to the first in row-major order.
template <typename T>
void MaxPool2Forward(const T* in, int c, int h, int w, T* out, int* argmax) {
  const int ph = h / 2;
  const int pw = w / 2;
#pragma omp parallel for schedule(static)
  for (int ch = 0; ch < c; ++ch) {
    for (int y = 0; y < ph; ++y) {
      for (int x = 0; x < pw; ++x) {
        int best = (ch * h + 2 * y) * w + 2 * x;
        for (int dy = 0; dy < 2; ++dy) {
          for (int dx = 0; dx < 2; ++dx) {
            const int idx = (ch * h + 2 * y + dy) * w + 2 * x + dx;
            if (in[idx] > in[best]) best = idx;
          }
        }
        const int o = (ch * ph + y) * pw + x;
        out[o] = in[best];
        argmax[o] = best;
      }
    }
  }
}

// Scatters dL/dout back through the recorded argmax. `d_in` must be zeroed.
template <typename T>
void MaxPool2Backward(const T* d_out, const int* argmax, size_t n_out,
                      T* d_in) {
  // Pool windows do not overlap, so each input receives at most one value.
  for (size_t i = 0; i < n_out; ++i) d_in[argmax[i]] += d_out[i];
}

template <typename T>
void DenseForward(const T* weights, const T* bias, const T* in, int n_in,
                  int n_out, T* out) {
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n_out; ++j) {
    const T* row = weights + static_cast<size_t>(j) * n_in;
    T acc = bias[j];
    for (int i = 0; i < n_in; ++i) acc += row[i] * in[i];
    out[j] = acc;
  }
}

// Accumulates dL/dW, dL/db; writes dL/din when `d_in` is non-null.
template <typename T>
void DenseBackward(const T* weights, const T* in, const T* d_out, int n_in,
                   int n_out, T* d_weights, T* d_bias, T* d_in) {
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n_out; ++j) {
    T* row = d_weights + static_cast<size_t>(j) * n_in;
    const T g = d_out[j];
    for (int i = 0; i < n_in; ++i) row[i] += g * in[i];
    d_bias[j] += g;
  }
  if (d_in == nullptr) return;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n_in; ++i) {
    T acc = 0;
    for (int j = 0; j < n_out; ++j) {
      acc += weights[static_cast<size_t>(j) * n_in + i] * d_out[j];
    }
    d_in[i] = acc;
  }
}

namespace reference {

template <typename T>
void Conv3x3Forward(const T* in, int c_in, int h, int w, const T* weights,
                    const T* bias, int c_out, T* out) {
  const int oh = h - 2;
  const int ow = w - 2;
  for (int o = 0; o < c_out; ++o) {
    for (int y = 0; y < oh; ++y) {
      for (int x = 0; x < ow; ++x) {
        T acc = bias[o];
        for (int c = 0; c < c_in; ++c) {
          for (int ky = 0; ky < kKernel; ++ky) {
            for (int kx = 0; kx < kKernel; ++kx) {
              acc += weights[((o * c_in + c) * kKernel + ky) * kKernel + kx] *
                     in[(c * h + y + ky) * w + x + kx];
            }
          }
        }
        out[(o * oh + y) * ow + x] = acc;
      }
    }
  }
}

template <typename T>
void Conv3x3BackwardWeights(const T* in, int c_in, int h, int w,
                            const T* d_out, int c_out, T* d_weights,
                            T* d_bias) {
  const int oh = h - 2;
  const int ow = w - 2;
  for (int o = 0; o < c_out; ++o) {
    for (int y = 0; y < oh; ++y) {
      for (int x = 0; x < ow; ++x) {
        const T g = d_out[(o * oh + y) * ow + x];
        d_bias[o] += g;
        for (int c = 0; c < c_in; ++c) {
          for (int ky = 0; ky < kKernel; ++ky) {
            for (int kx = 0; kx < kKernel; ++kx) {
              d_weights[((o * c_in + c) * kKernel + ky) * kKernel + kx] +=
                  g * in[(c * h + y + ky) * w + x + kx];
            }
          }
        }
      }
    }
  }
}

template <typename T>
void Conv3x3BackwardData(const T* d_out, int c_out, const T* weights,
                         int c_in, int h, int w, T* d_in) {
  const int oh = h - 2;
  const int ow = w - 2;
  for (int i = 0; i < c_in * h * w; ++i) d_in[i] = 0;
  for (int o = 0; o < c_out; ++o) {
    for (int y = 0; y < oh; ++y) {
      for (int x = 0; x < ow; ++x) {
        const T g = d_out[(o * oh + y) * ow + x];
        for (int c = 0; c < c_in; ++c) {
          for (int ky = 0; ky < kKernel; ++ky) {
            for (int kx = 0; kx < kKernel; ++kx) {
              d_in[(c * h + y + ky) * w + x + kx] +=
                  g * weights[((o * c_in + c) * kKernel + ky) * kKernel + kx];
            }
          }
        }
      }
    }
  }
}

template <typename T>
void MaxPool2Forward(const T* in, int c, int h, int w, T* out, int* argmax) {
  const int ph = h / 2;
  const int pw = w / 2;
  for (int ch = 0; ch < c; ++ch) {
    for (int y = 0; y < ph; ++y) {
      for (int x = 0; x < pw; ++x) {
        T best = -std::numeric_limits<T>::infinity();
        int best_idx = -1;
        for (int dy = 0; dy < 2; ++dy) {
          for (int dx = 0; dx < 2; ++dx) {
            const int idx = (ch * h + 2 * y + dy) * w + 2 * x + dx;
            if (best_idx < 0 || in[idx] > best) {
              best = in[idx];
              best_idx = idx;
            }
          }
        }
        out[(ch * ph + y) * pw + x] = best;
        argmax[(ch * ph + y) * pw + x] = best_idx;
      }
    }
  }
}

template <typename T>
void DenseForward(const T* weights, const T* bias, const T* in, int n_in,
                  int n_out, T* out) {
  for (int j = 0; j < n_out; ++j) {
    T acc = bias[j];
    for (int i = 0; i < n_in; ++i) acc += weights[j * n_in + i] * in[i];
    out[j] = acc;
  }
}

template <typename T>
void DenseBackward(const T* weights, const T* in, const T* d_out, int n_in,
                   int n_out, T* d_weights, T* d_bias, T* d_in) {
  if (d_in != nullptr) {
    for (int i = 0; i < n_in; ++i) d_in[i] = 0;
  }
  for (int j = 0; j < n_out; ++j) {
    d_bias[j] += d_out[j];
    for (int i = 0; i < n_in; ++i) {
      d_weights[j * n_in + i] += d_out[j] * in[i];
      if (d_in != nullptr) d_in[i] += weights[j * n_in + i] * d_out[j];
    }
  }
}

}  // namespace reference
}  // namespace disambig::nn

#endif  // DISAMBIG_NN_KERNELS_H_
