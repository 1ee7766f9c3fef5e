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

// Turns within-block match probabilities into inventor groups.

#ifndef DISAMBIG_CLUSTER_H_
#define DISAMBIG_CLUSTER_H_

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "disambig/dedup.h"

namespace disambig {

using NodePair = std::pair<std::string, std::string>;  // first < second

inline NodePair MakeNodePair(const std::string& a, const std::string& b) {
  return a < b ? NodePair{a, b} : NodePair{b, a};
}

struct MatchGraph {
  std::string block_key;
  std::vector<std::string> nodes;
  std::map<NodePair, double> edges;  // p_match in [0, 1]

  // Throws Error(kInvalidConfig) for a self-edge, an unknown endpoint, a
  // repeated node or a probability outside [0, 1].
  void Validate() const;
};

struct BinaryGraph {
  std::vector<std::string> nodes;
  std::set<NodePair> edges;
};

struct ClusterParams {
  double p_bar = 0.03;
  double l_bar = 0.05;

  // Throws Error(kInvalidConfig) unless p_bar in (0, 1), l_bar in (0, 1].
  void Validate() const;
};

// Keeps edges with p >= p_bar.
BinaryGraph Binarize(const MatchGraph& g, double p_bar);

using Group = std::vector<std::string>;  // sorted member ids

// Intermediate state, exposed for property tests.
struct ClusterTrace {
  std::vector<std::string> order;  // step 1 seed order
  std::vector<Group> pre_merge;    // groups as finalised by pruning
  struct Merge {
    Group kept;
    Group absorbed;
    int links = 0;
  };
  std::vector<Merge> merges;
};

// Groups sorted by smallest member id. The result partitions g.nodes.
//
// 1. Nodes are ordered by binarized degree, descending, ties by id.
// 2. Isolated nodes become singletons.
// 3. Each node not yet grouped seeds a candidate of itself plus its
//    ungrouped neighbours. While some member other than the seed has fewer
//    than n * l_bar links inside the candidate (n counts the whole
//    candidate), the member with fewest links is dropped; ties drop the one
//    latest in the step 1 order. The survivors are finalised.
// 4. Nodes dropped in step 3 seed their own candidates later, so every node
//    ends up in exactly one group.
// 5. Two groups merge when their cross links l satisfy l >= l_bar * n for
//    both sizes n. Pairs are scanned by (size desc, creation order asc); the
//    scan restarts after each merge and stops at a fixed point.
std::vector<Group> ClusterBlock(const MatchGraph& g, const ClusterParams& params,
                                ClusterTrace* trace = nullptr);

struct InventorGroup {
  std::string uid;
  Group members;

  bool operator==(const InventorGroup&) const = default;
};

// "<prefix>/<block_key>#0001", prefix omitted when empty. Ordinals are
// 1-based and follow the order of `groups`.
std::string MakeUid(std::string_view prefix, std::string_view block_key,
                    size_t ordinal);

std::vector<InventorGroup> NameGroups(std::string_view prefix,
                                      std::string_view block_key,
                                      std::span<const Group> groups);

// record_id -> uid for every survivor, with removed duplicates mapped to
// their survivor's uid. Throws Error(kPartitionViolation) when a record is in
// two groups, a grouped record is not a survivor, or a survivor is in no
// group.
std::map<std::string, std::string> AssignUids(
    std::span<const InventorGroup> groups, const DedupResult& dedup);

}  // namespace disambig

#endif  // DISAMBIG_CLUSTER_H_
