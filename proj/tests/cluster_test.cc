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

#include "disambig/cluster.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "cluster_oracle.h"
#include "disambig/base/error.h"
#include "disambig/base/rng.h"
#include "test_util.h"

namespace disambig {
namespace {

using testing::OracleCluster;
using testing::RandomMatchGraph;

MatchGraph Graph(std::vector<std::string> nodes,
                 std::vector<std::tuple<std::string, std::string, double>> e) {
  MatchGraph g;
  g.block_key = "BRO";
  g.nodes = std::move(nodes);
  for (const auto& [a, b, p] : e) g.edges[MakeNodePair(a, b)] = p;
  return g;
}

int LinksWithin(const BinaryGraph& bin, const std::string& v,
                const Group& group) {
  int n = 0;
  for (const std::string& u : group) {
    if (u != v && bin.edges.contains(MakeNodePair(u, v))) ++n;
  }
  return n;
}

const std::vector<ClusterParams> kSettings = {
    {0.03, 0.05}, {0.02, 0.1}, {0.5, 0.5}, {0.1, 0.9}, {0.95, 1.0}};

TEST(BinarizeTest, ThresholdIsInclusive) {
  const MatchGraph g = Graph({"a", "b", "c"}, {{"a", "b", 0.03},
                                               {"b", "c", 0.0299}});
  const BinaryGraph bin = Binarize(g, 0.03);
  EXPECT_EQ(bin.edges, (std::set<NodePair>{{"a", "b"}}));
  EXPECT_EQ(bin.nodes, g.nodes);
}

TEST(BinarizeTest, AllZeroAndAllOne) {
  const MatchGraph zeros =
      Graph({"a", "b", "c"}, {{"a", "b", 0}, {"a", "c", 0}, {"b", "c", 0}});
  EXPECT_TRUE(Binarize(zeros, 0.5).edges.empty());
  const MatchGraph ones =
      Graph({"a", "b", "c"}, {{"a", "b", 1}, {"a", "c", 1}, {"b", "c", 1}});
  EXPECT_EQ(Binarize(ones, 0.5).edges.size(), 3u);
}

TEST(BinarizeTest, RaisingThresholdNeverAddsEdges) {
  Rng rng(11);
  for (int it = 0; it < 300; ++it) {
    const MatchGraph g = RandomMatchGraph(rng, 8);
    const double lo = rng.UniformDouble();
    const double hi = lo + (1.0 - lo) * rng.UniformDouble();
    const BinaryGraph a = Binarize(g, lo);
    const BinaryGraph b = Binarize(g, hi);
    for (const NodePair& e : b.edges) {
      EXPECT_TRUE(a.edges.contains(e)) << "iteration " << it;
    }
  }
}

TEST(MatchGraphTest, ValidateRejectsBadGraphs) {
  EXPECT_NO_THROW(Graph({"a", "b"}, {{"a", "b", 0.5}}).Validate());
  const auto code = [](const MatchGraph& g) {
    try {
      g.Validate();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kUsage;
  };
  MatchGraph self = Graph({"a"}, {});
  self.edges[{"a", "a"}] = 0.5;
  EXPECT_EQ(code(self), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code(Graph({"a"}, {{"a", "z", 0.5}})), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code(Graph({"a", "a"}, {})), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code(Graph({"a", "b"}, {{"a", "b", 1.5}})),
            ErrorCode::kInvalidConfig);
  EXPECT_EQ(code(Graph({"a", "b"}, {{"a", "b", -0.1}})),
            ErrorCode::kInvalidConfig);
}

TEST(ClusterParamsTest, Domains) {
  EXPECT_NO_THROW((ClusterParams{0.03, 0.05}.Validate()));
  EXPECT_NO_THROW((ClusterParams{0.5, 1.0}.Validate()));
  for (const ClusterParams& bad : std::vector<ClusterParams>{
           {0.0, 0.5}, {1.0, 0.5}, {0.5, 0.0}, {0.5, 1.01}, {-1, 0.5}}) {
    EXPECT_THROW(bad.Validate(), Error) << bad.p_bar << " " << bad.l_bar;
  }
}

TEST(ClusterBlockTest, TriangleIsOneGroup) {
  const MatchGraph g = Graph({"a", "b", "c"}, {{"a", "b", 0.9},
                                               {"a", "c", 0.9},
                                               {"b", "c", 0.9}});
  EXPECT_EQ(ClusterBlock(g, {0.5, 0.5}),
            (std::vector<Group>{{"a", "b", "c"}}));
}

// Degrees A1 B2 C1, so B seeds first with {A,B,C}. At l_bar 0.9 each
// candidate member needs 2.7 links; A and C tie and C (later) goes, then A
// fails 1 < 1.8 and goes too. B, A and C end up as singletons; B and A share
// one link (>= 0.9 for both), so they merge; {A,B} and C share one link,
// short of 1.8.
TEST(ClusterBlockTest, PathAtHighLinkShare) {
  const MatchGraph g =
      Graph({"A", "B", "C"}, {{"A", "B", 0.8}, {"B", "C", 0.8}});
  ClusterTrace trace;
  EXPECT_EQ(ClusterBlock(g, {0.5, 0.9}, &trace),
            (std::vector<Group>{{"A", "B"}, {"C"}}));
  EXPECT_EQ(trace.order, (std::vector<std::string>{"B", "A", "C"}));
  EXPECT_EQ(trace.pre_merge, (std::vector<Group>{{"B"}, {"A"}, {"C"}}));
  ASSERT_EQ(trace.merges.size(), 1u);
  EXPECT_EQ(trace.merges[0].kept, (Group{"B"}));
  EXPECT_EQ(trace.merges[0].absorbed, (Group{"A"}));
}

// At l_bar 0.5 the B seed keeps {A,B} after dropping C, and C then merges
// in with its single link (>= 1.0 and >= 0.5).
TEST(ClusterBlockTest, PathAtHalfLinkShare) {
  const MatchGraph g =
      Graph({"A", "B", "C"}, {{"A", "B", 0.8}, {"B", "C", 0.8}});
  ClusterTrace trace;
  EXPECT_EQ(ClusterBlock(g, {0.5, 0.5}, &trace),
            (std::vector<Group>{{"A", "B", "C"}}));
  EXPECT_EQ(trace.pre_merge, (std::vector<Group>{{"A", "B"}, {"C"}}));
}

TEST(ClusterBlockTest, IsolatedNodesAreSingletons) {
  const MatchGraph g = Graph({"e", "d", "c", "b", "a"}, {});
  EXPECT_EQ(ClusterBlock(g, {}),
            (std::vector<Group>{{"a"}, {"b"}, {"c"}, {"d"}, {"e"}}));
}

TEST(ClusterBlockTest, EdgesBelowThresholdAreIgnored) {
  const MatchGraph g = Graph({"a", "b"}, {{"a", "b", 0.02}});
  EXPECT_EQ(ClusterBlock(g, {0.03, 0.05}),
            (std::vector<Group>{{"a"}, {"b"}}));
  EXPECT_EQ(ClusterBlock(g, {0.02, 0.05}), (std::vector<Group>{{"a", "b"}}));
}

TEST(ClusterBlockTest, EmptyGraph) {
  EXPECT_TRUE(ClusterBlock(Graph({}, {}), {}).empty());
}

TEST(ClusterBlockTest, RejectsInvalidInput) {
  EXPECT_THROW(ClusterBlock(Graph({"a"}, {{"a", "b", 0.5}}), {}), Error);
  EXPECT_THROW(ClusterBlock(Graph({"a"}, {}), {0.0, 0.5}), Error);
}

TEST(ClusterBlockTest, MatchesOracleOnSmallGraphs) {
  Rng rng(2026);
  for (int it = 0; it < 1000; ++it) {
    const MatchGraph g = RandomMatchGraph(rng, 8);
    for (const ClusterParams& p : kSettings) {
      ASSERT_EQ(ClusterBlock(g, p), OracleCluster(g, p.p_bar, p.l_bar))
          << "iteration " << it << " p_bar " << p.p_bar << " l_bar "
          << p.l_bar;
    }
  }
}

TEST(ClusterBlockTest, OutputPartitionsNodes) {
  Rng rng(3);
  for (int it = 0; it < 500; ++it) {
    const MatchGraph g = RandomMatchGraph(rng, 12);
    for (const ClusterParams& p : kSettings) {
      const std::vector<Group> groups = ClusterBlock(g, p);
      std::multiset<std::string> seen;
      for (const Group& grp : groups) {
        ASSERT_FALSE(grp.empty());
        ASSERT_TRUE(std::ranges::is_sorted(grp));
        seen.insert(grp.begin(), grp.end());
      }
      EXPECT_EQ(seen, std::multiset<std::string>(g.nodes.begin(),
                                                 g.nodes.end()))
          << "iteration " << it;
    }
  }
}

// Each non-seed member of a pruned group meets l >= n * l_bar. The seed
// (the member earliest in the step 1 order) links to every other member.
TEST(ClusterBlockTest, PrunedGroupsAreStable) {
  Rng rng(5);
  for (int it = 0; it < 500; ++it) {
    const MatchGraph g = RandomMatchGraph(rng, 10);
    for (const ClusterParams& p : kSettings) {
      ClusterTrace trace;
      ClusterBlock(g, p, &trace);
      const BinaryGraph bin = Binarize(g, p.p_bar);
      std::map<std::string, size_t> rank;
      for (size_t k = 0; k < trace.order.size(); ++k) {
        rank[trace.order[k]] = k;
      }
      for (const Group& grp : trace.pre_merge) {
        if (grp.size() < 2) continue;
        const std::string seed = *std::ranges::min_element(
            grp, {}, [&](const std::string& v) { return rank[v]; });
        const double need = p.l_bar * static_cast<double>(grp.size());
        for (const std::string& v : grp) {
          const int l = LinksWithin(bin, v, grp);
          if (v == seed) {
            EXPECT_EQ(l, static_cast<int>(grp.size()) - 1);
          } else {
            EXPECT_GE(l, need) << v << " iteration " << it;
          }
        }
      }
    }
  }
}

TEST(ClusterBlockTest, MergesSatisfyBothShares) {
  Rng rng(8);
  int merges = 0;
  for (int it = 0; it < 500; ++it) {
    const MatchGraph g = RandomMatchGraph(rng, 10);
    for (const ClusterParams& p : kSettings) {
      ClusterTrace trace;
      ClusterBlock(g, p, &trace);
      const BinaryGraph bin = Binarize(g, p.p_bar);
      for (const ClusterTrace::Merge& m : trace.merges) {
        ++merges;
        int cross = 0;
        for (const std::string& a : m.kept) {
          for (const std::string& b : m.absorbed) {
            cross += bin.edges.contains(MakeNodePair(a, b)) ? 1 : 0;
          }
        }
        EXPECT_EQ(cross, m.links);
        EXPECT_GE(m.links, p.l_bar * static_cast<double>(m.kept.size()));
        EXPECT_GE(m.links, p.l_bar * static_cast<double>(m.absorbed.size()));
      }
    }
  }
  EXPECT_GT(merges, 100);
}

TEST(ClusterBlockTest, NodeOrderDoesNotMatter) {
  Rng rng(13);
  for (int it = 0; it < 300; ++it) {
    MatchGraph g = RandomMatchGraph(rng, 9);
    const std::vector<Group> first = ClusterBlock(g, {});
    rng.Shuffle(std::span<std::string>(g.nodes));
    EXPECT_EQ(ClusterBlock(g, {}), first);
  }
}

TEST(UidTest, Format) {
  EXPECT_EQ(MakeUid("", "BRO", 1), "BRO#0001");
  EXPECT_EQ(MakeUid("test", "BROWN,E", 12), "test/BROWN,E#0012");
  EXPECT_EQ(MakeUid("", "X", 12345), "X#12345");
}

TEST(UidTest, NameGroupsNumbersInOrder) {
  const std::vector<Group> groups = {{"a", "b"}, {"c"}};
  const std::vector<InventorGroup> named = NameGroups("", "BRO", groups);
  EXPECT_EQ(named, (std::vector<InventorGroup>{{"BRO#0001", {"a", "b"}},
                                               {"BRO#0002", {"c"}}}));
}

DedupResult Survivors(std::vector<std::string> ids,
                      std::map<std::string, std::string> dups = {}) {
  DedupResult d;
  for (const std::string& id : ids) {
    Record r;
    r.record_id = id;
    r.last_name = "X";
    d.survivors.push_back(r);
  }
  d.duplicate_of = std::move(dups);
  return d;
}

TEST(AssignUidsTest, PropagatesToDuplicates) {
  const std::vector<InventorGroup> groups = {{"u1", {"A"}}, {"u2", {"C"}}};
  const auto m = AssignUids(groups, Survivors({"A", "C"}, {{"B", "A"}}));
  EXPECT_EQ(m, (std::map<std::string, std::string>{
                   {"A", "u1"}, {"B", "u1"}, {"C", "u2"}}));
}

TEST(AssignUidsTest, TwoGroupsGiveTwoUids) {
  const auto named = NameGroups("", "BRO", std::vector<Group>{{"a"}, {"b"}});
  const auto m = AssignUids(named, Survivors({"a", "b"}));
  EXPECT_NE(m.at("a"), m.at("b"));
}

TEST(AssignUidsTest, PartitionViolations) {
  const auto code = [](std::vector<InventorGroup> groups,
                       const DedupResult& d) {
    try {
      AssignUids(groups, d);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kUsage;
  };
  const DedupResult ab = Survivors({"a", "b"});
  EXPECT_EQ(code({{"u1", {"a", "b"}}, {"u2", {"b"}}}, ab),
            ErrorCode::kPartitionViolation);
  EXPECT_EQ(code({{"u1", {"a"}}}, ab), ErrorCode::kPartitionViolation);
  EXPECT_EQ(code({{"u1", {"a", "b", "z"}}}, ab),
            ErrorCode::kPartitionViolation);
  EXPECT_EQ(code({{"u1", {"a"}}, {"u1", {"b"}}}, ab),
            ErrorCode::kPartitionViolation);
}

TEST(AssignUidsTest, DeterministicAcrossRuns) {
  Rng rng(21);
  const MatchGraph g = RandomMatchGraph(rng, 12);
  const auto run = [&] {
    return AssignUids(NameGroups("", g.block_key, ClusterBlock(g, {})),
                      Survivors(g.nodes));
  };
  EXPECT_EQ(run(), run());
}

}  // namespace
}  // namespace disambig
