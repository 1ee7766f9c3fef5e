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

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "disambig/base/error.h"
#include "disambig/base/rng.h"
#include "disambig/synth.h"
#include "partitions.h"
#include "test_util.h"

namespace disambig {
namespace {

using testing::AllPartitions;
using testing::ContingencyCounts;

std::string Id(int i) { return "r" + std::to_string(i); }

LabeledCorpus CorpusFromLabels(const std::vector<int>& labels) {
  LabeledCorpus c;
  for (size_t i = 0; i < labels.size(); ++i) {
    Record r;
    r.record_id = Id(static_cast<int>(i));
    r.last_name = "SMITH";
    c.records.push_back(r);
    c.entity_ids[r.record_id] = "e" + std::to_string(labels[i]);
  }
  return c;
}

std::map<std::string, std::string> PredictionFromLabels(
    const std::vector<int>& labels) {
  std::map<std::string, std::string> m;
  for (size_t i = 0; i < labels.size(); ++i) {
    m[Id(static_cast<int>(i))] = "u" + std::to_string(labels[i]);
  }
  return m;
}

std::vector<std::string> Ids(int n) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back(Id(i));
  return ids;
}

TEST(MetricsTest, WorkedExample) {
  const Metrics m = ComputeMetrics({98, 1, 0, 2});
  EXPECT_NEAR(m.precision, 98.0 / 99.0, 1e-12);
  EXPECT_NEAR(m.precision, 0.9899, 1e-4);
  EXPECT_DOUBLE_EQ(m.recall, 0.98);
  EXPECT_NEAR(m.f1, 0.98492, 1e-5);
  EXPECT_DOUBLE_EQ(m.splitting, 0.02);
  EXPECT_DOUBLE_EQ(m.lumping, 0.01);
  EXPECT_FALSE(m.degenerate());
}

TEST(MetricsTest, AllZeroIsFlagged) {
  const Metrics m = ComputeMetrics({0, 0, 0, 0});
  EXPECT_EQ(m.precision, 1.0);
  EXPECT_EQ(m.recall, 1.0);
  EXPECT_EQ(m.splitting, 0.0);
  EXPECT_EQ(m.lumping, 0.0);
  EXPECT_TRUE(m.degenerate());
}

TEST(MetricsTest, NoPredictedLinksFlagsPrecisionOnly) {
  const Metrics m = ComputeMetrics({0, 0, 10, 4});
  EXPECT_EQ(m.precision, 1.0);
  EXPECT_EQ(m.recall, 0.0);
  EXPECT_EQ(m.splitting, 1.0);
  EXPECT_EQ(m.flags, (std::vector<std::string>{"precision_undefined"}));
}

TEST(MetricsTest, NoTruePositivesFlagsF1) {
  const Metrics m = ComputeMetrics({0, 3, 1, 2});
  EXPECT_EQ(m.precision, 0.0);
  EXPECT_EQ(m.recall, 0.0);
  EXPECT_EQ(m.f1, 0.0);
  EXPECT_EQ(m.flags, (std::vector<std::string>{"f1_undefined"}));
}

TEST(MetricsTest, LumpingCanExceedOne) {
  const Metrics m = ComputeMetrics({1, 5, 0, 1});
  EXPECT_DOUBLE_EQ(m.lumping, 2.5);
}

TEST(MetricsTest, RecallPlusSplittingAndScaling) {
  Rng rng(4);
  for (int it = 0; it < 1000; ++it) {
    ConfusionCounts c;
    c.tp = rng.UniformInt(0, 50);
    c.fp = rng.UniformInt(0, 50);
    c.tn = rng.UniformInt(0, 50);
    c.fn = rng.UniformInt(0, 50);
    const Metrics m = ComputeMetrics(c);
    if (c.tp + c.fn > 0) EXPECT_NEAR(m.recall + m.splitting, 1.0, 1e-12);
    if (m.precision + m.recall > 0) {
      EXPECT_NEAR(m.f1,
                  2 * m.precision * m.recall / (m.precision + m.recall),
                  1e-12);
    }
    const uint64_t k = rng.UniformInt(2, 9);
    const Metrics s = ComputeMetrics({c.tp * k, c.fp * k, c.tn * k, c.fn * k});
    EXPECT_NEAR(s.f1, m.f1, 1e-12);
    EXPECT_NEAR(s.precision, m.precision, 1e-12);
    EXPECT_EQ(s.flags, m.flags);
  }
}

TEST(CountPairsTest, PerfectAndGiantCluster) {
  const std::vector<int> truth = {0, 0, 1, 1, 1, 2};
  const LabeledCorpus corpus = CorpusFromLabels(truth);
  const auto universe = AllPairsUniverse(Ids(6));
  const ConfusionCounts perfect =
      CountPairs(corpus, PredictionFromLabels(truth), universe);
  EXPECT_EQ(perfect.fp, 0u);
  EXPECT_EQ(perfect.fn, 0u);
  EXPECT_EQ(perfect.tp, 4u);
  const ConfusionCounts giant =
      CountPairs(corpus, PredictionFromLabels({0, 0, 0, 0, 0, 0}), universe);
  EXPECT_EQ(giant.fn, 0u);
  EXPECT_EQ(giant.tn, 0u);
  EXPECT_EQ(giant.fp, 15u - 4u);
}

TEST(CountPairsTest, SplitOneOfTwoEntities) {
  // r0 r1 are e0, r2 r3 are e1; the prediction splits e1.
  const LabeledCorpus corpus = CorpusFromLabels({0, 0, 1, 1});
  const ConfusionCounts c = CountPairs(
      corpus, PredictionFromLabels({0, 0, 1, 2}), AllPairsUniverse(Ids(4)));
  EXPECT_EQ(c, (ConfusionCounts{1, 0, 4, 1}));
}

TEST(CountPairsTest, AllFourRecordPartitionPairs) {
  const auto parts = AllPartitions(4);
  ASSERT_EQ(parts.size(), 15u);
  const auto universe = AllPairsUniverse(Ids(4));
  ASSERT_EQ(universe.size(), 6u);
  for (const auto& truth : parts) {
    const LabeledCorpus corpus = CorpusFromLabels(truth);
    for (const auto& pred : parts) {
      const ConfusionCounts got =
          CountPairs(corpus, PredictionFromLabels(pred), universe);
      EXPECT_EQ(got, ContingencyCounts(truth, pred));
      EXPECT_EQ(got.total(), 6u);
    }
  }
}

TEST(CountPairsTest, AllThreeRecordMetrics) {
  const auto parts = AllPartitions(3);
  ASSERT_EQ(parts.size(), 5u);
  for (const auto& truth : parts) {
    for (const auto& pred : parts) {
      const ConfusionCounts c =
          CountPairs(CorpusFromLabels(truth), PredictionFromLabels(pred),
                     AllPairsUniverse(Ids(3)));
      const Metrics m = ComputeMetrics(c);
      const double tp = c.tp, fp = c.fp, fn = c.fn;
      if (c.tp + c.fp > 0) EXPECT_DOUBLE_EQ(m.precision, tp / (tp + fp));
      if (c.tp + c.fn > 0) {
        EXPECT_DOUBLE_EQ(m.recall, tp / (tp + fn));
        EXPECT_DOUBLE_EQ(m.lumping, fp / (tp + fn));
      }
    }
  }
}

TEST(CountPairsTest, MissingPrediction) {
  const LabeledCorpus corpus = CorpusFromLabels({0, 0});
  try {
    CountPairs(corpus, {{"r0", "u"}}, AllPairsUniverse(Ids(2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingPrediction);
  }
}

TEST(UniverseTest, WithinBlockFollowsDuplicates) {
  Blocking b;
  b.blocks["AAA"] = {"r0", "r1"};
  b.blocks["BBB"] = {"r2"};
  const std::vector<std::string> ids = {"r0", "r1", "r2", "r3"};
  const auto u = WithinBlockUniverse(ids, b, {{"r3", "r2"}});
  EXPECT_EQ(u, (std::vector<NodePair>{{"r0", "r1"}, {"r2", "r3"}}));
  EXPECT_THROW(WithinBlockUniverse(ids, b, {}), Error);
}

TEST(UniverseTest, AllPairsSize) {
  for (int n = 0; n < 12; ++n) {
    const auto u = AllPairsUniverse(Ids(n));
    EXPECT_EQ(u.size(), static_cast<size_t>(n * (n - 1) / 2));
    EXPECT_EQ(std::set<NodePair>(u.begin(), u.end()).size(), u.size());
    for (const auto& [a, b] : u) EXPECT_LT(a, b);
  }
}

TEST(SplitTest, Validation) {
  EXPECT_THROW((SplitSpec{0.0, 0.25, 1}.Validate()), Error);
  EXPECT_THROW((SplitSpec{0.8, 1.0, 1}.Validate()), Error);
  EXPECT_NO_THROW((SplitSpec{}.Validate()));
  LabeledCorpus unlabeled = CorpusFromLabels({0});
  unlabeled.entity_ids.clear();
  EXPECT_THROW(SplitCorpus(unlabeled, {}), Error);
}

TEST(SplitTest, SingleEntityLandsInOnePartition) {
  const CorpusSplit s = SplitCorpus(CorpusFromLabels({0, 0, 0}), {});
  const int nonempty = !s.train.records.empty() +
                       !s.validation.records.empty() +
                       !s.test.records.empty();
  EXPECT_EQ(nonempty, 1);
}

TEST(SplitTest, PropertiesOnSyntheticCorpora) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    SynthConfig cfg;
    cfg.n_entities = 100;
    const LabeledCorpus corpus = GenerateSyntheticCorpus(cfg, seed);
    const SplitSpec spec{0.8, 0.25, seed};
    const CorpusSplit s = SplitCorpus(corpus, spec);
    const CorpusSplit again = SplitCorpus(corpus, spec);
    EXPECT_EQ(s.train, again.train);
    EXPECT_EQ(s.validation, again.validation);
    EXPECT_EQ(s.test, again.test);

    std::map<std::string, size_t> entity_size;
    for (const auto& [id, e] : corpus.entity_ids) ++entity_size[e];
    size_t largest = 0;
    for (const auto& [e, n] : entity_size) largest = std::max(largest, n);

    std::multiset<std::string> ids;
    std::map<std::string, std::set<int>> where;
    const LabeledCorpus* parts[] = {&s.train, &s.validation, &s.test};
    for (int p = 0; p < 3; ++p) {
      for (const Record& r : parts[p]->records) {
        ids.insert(r.record_id);
        where[corpus.entity_ids.at(r.record_id)].insert(p);
        EXPECT_EQ(parts[p]->entity_ids.at(r.record_id),
                  corpus.entity_ids.at(r.record_id));
      }
    }
    std::multiset<std::string> all;
    for (const Record& r : corpus.records) all.insert(r.record_id);
    EXPECT_EQ(ids, all);
    for (const auto& [e, ps] : where) EXPECT_EQ(ps.size(), 1u) << e;

    const double n = static_cast<double>(corpus.records.size());
    const double pool =
        static_cast<double>(s.train.records.size() + s.validation.records.size());
    EXPECT_LT(std::abs(pool - 0.8 * n), static_cast<double>(largest));
    EXPECT_LT(std::abs(static_cast<double>(s.train.records.size()) - 0.75 * pool),
              static_cast<double>(largest));
  }
}

TEST(SplitTest, SeedsDiffer) {
  SynthConfig cfg;
  cfg.n_entities = 50;
  const LabeledCorpus corpus = GenerateSyntheticCorpus(cfg, 1);
  EXPECT_NE(SplitCorpus(corpus, {0.8, 0.25, 1}).test,
            SplitCorpus(corpus, {0.8, 0.25, 2}).test);
}

TEST(ReportTest, KeyValueLines) {
  std::ostringstream out;
  WriteMetricsReport({98, 1, 0, 2}, ComputeMetrics({98, 1, 0, 2}), out);
  const std::string text = out.str();
  EXPECT_NE(text.find("\nrecall=0.97999999999999998\n"), std::string::npos);
  EXPECT_NE(text.find("\ntp=98\n"), std::string::npos);
  EXPECT_NE(text.find("\nflags=none\n"), std::string::npos);
  std::ostringstream degenerate;
  WriteMetricsReport({}, ComputeMetrics({}), degenerate);
  EXPECT_NE(degenerate.str().find("flags=precision_undefined,recall_undefined"),
            std::string::npos);
}

}  // namespace
}  // namespace disambig
