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

// Pairwise evaluation and train/validation/test splitting.

#ifndef DISAMBIG_EVAL_H_
#define DISAMBIG_EVAL_H_

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "disambig/blocking.h"
#include "disambig/cluster.h"
#include "disambig/ingest.h"

namespace disambig {

struct ConfusionCounts {
  uint64_t tp = 0;
  uint64_t fp = 0;
  uint64_t tn = 0;
  uint64_t fn = 0;

  uint64_t total() const { return tp + fp + tn + fn; }
  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    tn += o.tn;
    fn += o.fn;
    return *this;
  }
  bool operator==(const ConfusionCounts&) const = default;
};

struct Metrics {
  double precision = 1.0;
  double recall = 1.0;
  double splitting = 0.0;
  double lumping = 0.0;
  double f1 = 1.0;
  // Names of quantities whose denominator was zero and which therefore hold
  // a convention value instead of a ratio.
  std::vector<std::string> flags;

  bool degenerate() const { return !flags.empty(); }
};

// Classifies every pair of `universe` by entity label and predicted uid.
// Throws Error(kMissingPrediction) when a pair member has no uid, and
// Error(kInvalidConfig) when it has no entity label.
ConfusionCounts CountPairs(const LabeledCorpus& truth,
                           const std::map<std::string, std::string>& predicted,
                           std::span<const NodePair> universe);

// precision = tp/(tp+fp), recall = tp/(tp+fn), splitting = fn/(tp+fn),
// lumping = fp/(tp+fn), f1 = harmonic mean of precision and recall. A 0/0
// gives 1.0 for precision and recall, 0.0 for splitting, lumping and f1, and
// is flagged. Lumping is not bounded by 1.
Metrics ComputeMetrics(const ConfusionCounts& c);

// All pairs of `record_ids` that share a block. Records removed as
// duplicates take the block of their survivor via `duplicate_of`.
std::vector<NodePair> WithinBlockUniverse(
    std::span<const std::string> record_ids, const Blocking& blocking,
    const std::map<std::string, std::string>& duplicate_of);

// Every unordered pair of `record_ids`.
std::vector<NodePair> AllPairsUniverse(std::span<const std::string> record_ids);

struct SplitSpec {
  double train_fraction = 0.8;
  double validation_fraction_of_train = 0.25;
  uint64_t seed = 1;

  // Throws Error(kInvalidConfig).
  void Validate() const;
};

struct CorpusSplit {
  LabeledCorpus train;
  LabeledCorpus validation;
  LabeledCorpus test;
};

// Splits by entity, so that all records of an entity land in one partition.
// Entities are shuffled with spec.seed and taken in turn into train (later
// divided into train and validation) while the records taken so far are
// fewer than the target share; each partition therefore misses its target by
// less than one entity's records. Records keep their corpus order. Throws
// Error(kInvalidConfig) for an unlabeled corpus.
CorpusSplit SplitCorpus(const LabeledCorpus& corpus, const SplitSpec& spec);

// Aligned text table followed by key=value lines.
void WriteMetricsReport(const ConfusionCounts& counts, const Metrics& m,
                        std::ostream& out);

}  // namespace disambig

#endif  // DISAMBIG_EVAL_H_
