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

#include "disambig/eval.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "disambig/base/csv.h"
#include "disambig/base/error.h"
#include "disambig/base/rng.h"

namespace disambig {
namespace {

const std::string& Lookup(const std::map<std::string, std::string>& m,
                          const std::string& id, ErrorCode code,
                          const char* what) {
  const auto it = m.find(id);
  if (it == m.end()) {
    throw Error(code, "record " + id + " has no " + what);
  }
  return it->second;
}

LabeledCorpus Subset(const LabeledCorpus& corpus,
                     const std::set<std::string>& entities) {
  LabeledCorpus out;
  for (const Record& r : corpus.records) {
    const std::string& e = corpus.entity_ids.at(r.record_id);
    if (entities.contains(e)) {
      out.records.push_back(r);
      out.entity_ids[r.record_id] = e;
    }
  }
  return out;
}

// Moves entities from the front of `entities` while the records moved so far
// are fewer than fraction * total, keeping their order.
std::vector<std::string> TakeShare(std::vector<std::string>* entities,
                                   const std::map<std::string, size_t>& sizes,
                                   double fraction) {
  size_t total = 0;
  for (const std::string& e : *entities) total += sizes.at(e);
  const double target = fraction * static_cast<double>(total);
  size_t count = 0;
  size_t k = 0;
  while (k < entities->size() && static_cast<double>(count) < target) {
    count += sizes.at((*entities)[k]);
    ++k;
  }
  const auto mid = entities->begin() + static_cast<std::ptrdiff_t>(k);
  std::vector<std::string> taken(entities->begin(), mid);
  entities->erase(entities->begin(), mid);
  return taken;
}

std::set<std::string> AsSet(const std::vector<std::string>& v) {
  return std::set<std::string>(v.begin(), v.end());
}

}  // namespace

ConfusionCounts CountPairs(const LabeledCorpus& truth,
                           const std::map<std::string, std::string>& predicted,
                           std::span<const NodePair> universe) {
  ConfusionCounts c;
  for (const auto& [a, b] : universe) {
    const bool same_uid =
        Lookup(predicted, a, ErrorCode::kMissingPrediction, "uid") ==
        Lookup(predicted, b, ErrorCode::kMissingPrediction, "uid");
    const bool same_entity =
        Lookup(truth.entity_ids, a, ErrorCode::kInvalidConfig,
               "entity label") ==
        Lookup(truth.entity_ids, b, ErrorCode::kInvalidConfig, "entity label");
    if (same_entity) {
      ++(same_uid ? c.tp : c.fn);
    } else {
      ++(same_uid ? c.fp : c.tn);
    }
  }
  return c;
}

Metrics ComputeMetrics(const ConfusionCounts& c) {
  Metrics m;
  const auto tp = static_cast<double>(c.tp);
  const auto fp = static_cast<double>(c.fp);
  const auto fn = static_cast<double>(c.fn);
  if (c.tp + c.fp > 0) {
    m.precision = tp / (tp + fp);
  } else {
    m.flags.push_back("precision_undefined");
  }
  if (c.tp + c.fn > 0) {
    m.recall = tp / (tp + fn);
    m.splitting = fn / (tp + fn);
    m.lumping = fp / (tp + fn);
  } else {
    m.flags.push_back("recall_undefined");
    m.flags.push_back("splitting_undefined");
    m.flags.push_back("lumping_undefined");
  }
  if (m.precision + m.recall > 0.0) {
    m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  } else {
    m.f1 = 0.0;
    m.flags.push_back("f1_undefined");
  }
  return m;
}

std::vector<NodePair> WithinBlockUniverse(
    std::span<const std::string> record_ids, const Blocking& blocking,
    const std::map<std::string, std::string>& duplicate_of) {
  const std::map<std::string, std::string> key_of = blocking.KeyOf();
  std::map<std::string, std::vector<std::string>> by_block;
  for (const std::string& id : record_ids) {
    auto it = key_of.find(id);
    if (it == key_of.end()) {
      const auto dup = duplicate_of.find(id);
      if (dup != duplicate_of.end()) it = key_of.find(dup->second);
    }
    if (it == key_of.end()) {
      throw Error(ErrorCode::kMissingPrediction,
                  "record " + id + " is in no block");
    }
    by_block[it->second].push_back(id);
  }
  std::vector<NodePair> out;
  for (auto& [key, ids] : by_block) {
    std::ranges::sort(ids);
    for (size_t i = 0; i < ids.size(); ++i) {
      for (size_t j = i + 1; j < ids.size(); ++j) out.push_back({ids[i], ids[j]});
    }
  }
  return out;
}

std::vector<NodePair> AllPairsUniverse(
    std::span<const std::string> record_ids) {
  std::vector<std::string> ids(record_ids.begin(), record_ids.end());
  std::ranges::sort(ids);
  std::vector<NodePair> out;
  for (size_t i = 0; i < ids.size(); ++i) {
    for (size_t j = i + 1; j < ids.size(); ++j) out.push_back({ids[i], ids[j]});
  }
  return out;
}

void SplitSpec::Validate() const {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "train_fraction must lie in (0, 1)");
  }
  if (!(validation_fraction_of_train > 0.0 &&
        validation_fraction_of_train < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig,
                "validation_fraction_of_train must lie in (0, 1)");
  }
}

CorpusSplit SplitCorpus(const LabeledCorpus& corpus, const SplitSpec& spec) {
  spec.Validate();
  if (!corpus.labeled()) {
    throw Error(ErrorCode::kInvalidConfig, "cannot split an unlabeled corpus");
  }
  std::map<std::string, size_t> sizes;
  for (const Record& r : corpus.records) ++sizes[corpus.entity_ids.at(r.record_id)];
  std::vector<std::string> entities;
  for (const auto& [e, n] : sizes) entities.push_back(e);
  Rng rng(spec.seed);
  rng.Shuffle(std::span<std::string>(entities));

  std::vector<std::string> train_pool =
      TakeShare(&entities, sizes, spec.train_fraction);
  const std::vector<std::string> train = TakeShare(
      &train_pool, sizes, 1.0 - spec.validation_fraction_of_train);
  CorpusSplit out;
  out.train = Subset(corpus, AsSet(train));
  out.validation = Subset(corpus, AsSet(train_pool));
  out.test = Subset(corpus, AsSet(entities));
  return out;
}

void WriteMetricsReport(const ConfusionCounts& counts, const Metrics& m,
                        std::ostream& out) {
  char buf[160];
  out << "metric     value\n";
  const auto row = [&](const char* name, double v) {
    std::snprintf(buf, sizeof(buf), "%-10s %.6f\n", name, v);
    out << buf;
  };
  row("precision", m.precision);
  row("recall", m.recall);
  row("splitting", m.splitting);
  row("lumping", m.lumping);
  row("f1", m.f1);
  std::snprintf(buf, sizeof(buf),
                "pairs      %llu (tp %llu, fp %llu, tn %llu, fn %llu)\n",
                static_cast<unsigned long long>(counts.total()),
                static_cast<unsigned long long>(counts.tp),
                static_cast<unsigned long long>(counts.fp),
                static_cast<unsigned long long>(counts.tn),
                static_cast<unsigned long long>(counts.fn));
  out << buf << "\n";
  const auto kv = [&](const char* name, double v) {
    std::snprintf(buf, sizeof(buf), "%s=%.17g\n", name, v);
    out << buf;
  };
  kv("precision", m.precision);
  kv("recall", m.recall);
  kv("splitting", m.splitting);
  kv("lumping", m.lumping);
  kv("f1", m.f1);
  out << "tp=" << counts.tp << "\nfp=" << counts.fp << "\ntn=" << counts.tn
      << "\nfn=" << counts.fn << "\n";
  out << "flags=" << (m.flags.empty() ? "none" : JoinStrings(m.flags, ","))
      << "\n";
}

}  // namespace disambig
