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

// Serial reference kernels against their OpenMP counterparts.
//
//   ./bench_kernels --benchmark_filter=Conv
//   OMP_NUM_THREADS=4 ./bench_kernels

#include <benchmark/benchmark.h>

#include <vector>

#include "disambig/base/rng.h"
#include "disambig/layout.h"
#include "disambig/nn/kernels.h"
#include "disambig/render.h"
#include "disambig/synth.h"

namespace disambig {
namespace {

std::vector<float> RandomValues(size_t n, uint64_t seed) {
  Rng rng(seed);
  std::vector<float> v(n);
  for (float& x : v) x = static_cast<float>(rng.UniformDouble() - 0.5);
  return v;
}

// Second conv layer of the reference network: 16x14x14 -> 32x12x12.
constexpr int kCin = 16, kH = 14, kW = 14, kCout = 32;

template <bool kParallel>
void BM_ConvForward(benchmark::State& state) {
  const auto in = RandomValues(kCin * kH * kW, 1);
  const auto w = RandomValues(kCout * kCin * nn::kTaps, 2);
  const auto b = RandomValues(kCout, 3);
  std::vector<float> out(kCout * (kH - 2) * (kW - 2));
  for (auto _ : state) {
    if constexpr (kParallel) {
      nn::Conv3x3Forward(in.data(), kCin, kH, kW, w.data(), b.data(), kCout,
                         out.data());
    } else {
      nn::reference::Conv3x3Forward(in.data(), kCin, kH, kW, w.data(),
                                    b.data(), kCout, out.data());
    }
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_ConvForward<false>)->Name("ConvForward/serial");
BENCHMARK(BM_ConvForward<true>)->Name("ConvForward/openmp");

template <bool kParallel>
void BM_ConvBackwardWeights(benchmark::State& state) {
  const auto in = RandomValues(kCin * kH * kW, 1);
  const auto g = RandomValues(kCout * (kH - 2) * (kW - 2), 2);
  std::vector<float> dw(kCout * kCin * nn::kTaps);
  std::vector<float> db(kCout);
  for (auto _ : state) {
    if constexpr (kParallel) {
      nn::Conv3x3BackwardWeights(in.data(), kCin, kH, kW, g.data(), kCout,
                                 dw.data(), db.data());
    } else {
      nn::reference::Conv3x3BackwardWeights(in.data(), kCin, kH, kW, g.data(),
                                            kCout, dw.data(), db.data());
    }
    benchmark::DoNotOptimize(dw.data());
  }
}
BENCHMARK(BM_ConvBackwardWeights<false>)->Name("ConvBackwardWeights/serial");
BENCHMARK(BM_ConvBackwardWeights<true>)->Name("ConvBackwardWeights/openmp");

template <bool kParallel>
void BM_ConvBackwardData(benchmark::State& state) {
  const auto g = RandomValues(kCout * (kH - 2) * (kW - 2), 1);
  const auto w = RandomValues(kCout * kCin * nn::kTaps, 2);
  std::vector<float> dx(kCin * kH * kW);
  for (auto _ : state) {
    if constexpr (kParallel) {
      nn::Conv3x3BackwardData(g.data(), kCout, w.data(), kCin, kH, kW,
                              dx.data());
    } else {
      nn::reference::Conv3x3BackwardData(g.data(), kCout, w.data(), kCin, kH,
                                         kW, dx.data());
    }
    benchmark::DoNotOptimize(dx.data());
  }
}
BENCHMARK(BM_ConvBackwardData<false>)->Name("ConvBackwardData/serial");
BENCHMARK(BM_ConvBackwardData<true>)->Name("ConvBackwardData/openmp");

// First dense layer: 1152 -> 128.
template <bool kParallel>
void BM_DenseForward(benchmark::State& state) {
  constexpr int kIn = 1152, kOut = 128;
  const auto w = RandomValues(kIn * kOut, 1);
  const auto b = RandomValues(kOut, 2);
  const auto x = RandomValues(kIn, 3);
  std::vector<float> y(kOut);
  for (auto _ : state) {
    if constexpr (kParallel) {
      nn::DenseForward(w.data(), b.data(), x.data(), kIn, kOut, y.data());
    } else {
      nn::reference::DenseForward(w.data(), b.data(), x.data(), kIn, kOut,
                                  y.data());
    }
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BM_DenseForward<false>)->Name("DenseForward/serial");
BENCHMARK(BM_DenseForward<true>)->Name("DenseForward/openmp");

// All pairs of a 40-record block.
template <bool kParallel>
void BM_RenderBlock(benchmark::State& state) {
  SynthConfig cfg;
  cfg.n_entities = 12;
  const LabeledCorpus corpus = GenerateSyntheticCorpus(cfg, 5);
  std::vector<PairIndex> pairs;
  const size_t n = std::min<size_t>(40, corpus.records.size());
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
  }
  const RecordMapLayout& layout =
      FindLayout(BuiltinLayoutRegistry(), "heuristic");
  for (auto _ : state) {
    auto maps = kParallel
                    ? RenderComparisonMaps(corpus.records, pairs, layout)
                    : RenderComparisonMapsSerial(corpus.records, pairs, layout);
    benchmark::DoNotOptimize(maps.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(pairs.size()));
}
BENCHMARK(BM_RenderBlock<false>)->Name("RenderBlock/serial");
BENCHMARK(BM_RenderBlock<true>)->Name("RenderBlock/openmp");

}  // namespace
}  // namespace disambig

BENCHMARK_MAIN();
