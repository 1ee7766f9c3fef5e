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

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "disambig/base/error.h"

namespace disambig {
namespace {

struct WorkGroup {
  int id = 0;  // creation order
  std::vector<int> members;
};

Group ToGroup(const std::vector<int>& members,
              const std::vector<std::string>& names) {
  Group g;
  for (int m : members) g.push_back(names[m]);
  std::ranges::sort(g);
  return g;
}

}  // namespace

void MatchGraph::Validate() const {
  std::set<std::string> seen;
  for (const std::string& n : nodes) {
    if (!seen.insert(n).second) {
      throw Error(ErrorCode::kInvalidConfig,
                  "block " + block_key + " repeats node " + n);
    }
  }
  for (const auto& [pair, p] : edges) {
    if (pair.first == pair.second) {
      throw Error(ErrorCode::kInvalidConfig, "self-edge on " + pair.first);
    }
    if (!seen.contains(pair.first) || !seen.contains(pair.second)) {
      throw Error(ErrorCode::kInvalidConfig, "edge " + pair.first + "-" +
                                                 pair.second +
                                                 " leaves block " + block_key);
    }
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "probability out of range on " + pair.first + "-" +
                      pair.second);
    }
  }
}

void ClusterParams::Validate() const {
  if (!(p_bar > 0.0 && p_bar < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "p_bar must lie in (0, 1)");
  }
  if (!(l_bar > 0.0 && l_bar <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "l_bar must lie in (0, 1]");
  }
}

BinaryGraph Binarize(const MatchGraph& g, double p_bar) {
  BinaryGraph out;
  out.nodes = g.nodes;
  for (const auto& [pair, p] : g.edges) {
    if (p >= p_bar) out.edges.insert(pair);
  }
  return out;
}

std::vector<Group> ClusterBlock(const MatchGraph& g, const ClusterParams& params,
                                ClusterTrace* trace) {
  g.Validate();
  params.Validate();
  const BinaryGraph bin = Binarize(g, params.p_bar);
  const int n = static_cast<int>(bin.nodes.size());
  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i) index[bin.nodes[i]] = i;

  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  std::vector<int> degree(n, 0);
  for (const auto& [a, b] : bin.edges) {
    const int i = index.at(a);
    const int j = index.at(b);
    adj[i][j] = adj[j][i] = 1;
    ++degree[i];
    ++degree[j];
  }

  // Step 1.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::ranges::sort(order, [&](int a, int b) {
    if (degree[a] != degree[b]) return degree[a] > degree[b];
    return bin.nodes[a] < bin.nodes[b];
  });
  std::vector<int> rank(n);
  for (int k = 0; k < n; ++k) rank[order[k]] = k;

  std::vector<WorkGroup> groups;
  std::vector<char> assigned(n, 0);
  // Step 2.
  for (int v : order) {
    if (degree[v] == 0) {
      groups.push_back({static_cast<int>(groups.size()), {v}});
      assigned[v] = 1;
    }
  }
  // Steps 3 and 4.
  for (int seed : order) {
    if (assigned[seed]) continue;
    std::vector<int> cand = {seed};
    for (int u : order) {
      if (u != seed && !assigned[u] && adj[seed][u]) cand.push_back(u);
    }
    while (true) {
      const double need = static_cast<double>(cand.size()) * params.l_bar;
      int weakest = -1;
      int weakest_links = 0;
      for (int m : cand) {
        if (m == seed) continue;
        int links = 0;
        for (int o : cand) links += adj[m][o];
        if (static_cast<double>(links) >= need) continue;
        if (weakest < 0 || links < weakest_links ||
            (links == weakest_links && rank[m] > rank[weakest])) {
          weakest = m;
          weakest_links = links;
        }
      }
      if (weakest < 0) break;
      std::erase(cand, weakest);
    }
    for (int m : cand) assigned[m] = 1;
    groups.push_back({static_cast<int>(groups.size()), std::move(cand)});
  }
  if (trace != nullptr) {
    trace->order.clear();
    for (int v : order) trace->order.push_back(bin.nodes[v]);
    trace->pre_merge.clear();
    for (const WorkGroup& wg : groups) {
      trace->pre_merge.push_back(ToGroup(wg.members, bin.nodes));
    }
    trace->merges.clear();
  }

  // Step 5.
  bool merged = true;
  while (merged) {
    merged = false;
    std::ranges::sort(groups, [](const WorkGroup& a, const WorkGroup& b) {
      if (a.members.size() != b.members.size()) {
        return a.members.size() > b.members.size();
      }
      return a.id < b.id;
    });
    for (size_t i = 0; i < groups.size() && !merged; ++i) {
      for (size_t j = i + 1; j < groups.size() && !merged; ++j) {
        int links = 0;
        for (int a : groups[i].members) {
          for (int b : groups[j].members) links += adj[a][b];
        }
        const auto n_i = static_cast<double>(groups[i].members.size());
        const auto n_j = static_cast<double>(groups[j].members.size());
        if (links >= params.l_bar * n_i && links >= params.l_bar * n_j) {
          if (trace != nullptr) {
            trace->merges.push_back({ToGroup(groups[i].members, bin.nodes),
                                     ToGroup(groups[j].members, bin.nodes),
                                     links});
          }
          groups[i].members.insert(groups[i].members.end(),
                                   groups[j].members.begin(),
                                   groups[j].members.end());
          groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
      }
    }
  }

  std::vector<Group> out;
  for (const WorkGroup& wg : groups) out.push_back(ToGroup(wg.members, bin.nodes));
  std::ranges::sort(out, [](const Group& a, const Group& b) {
    return a.front() < b.front();
  });
  return out;
}

std::string MakeUid(std::string_view prefix, std::string_view block_key,
                    size_t ordinal) {
  char num[32];
  std::snprintf(num, sizeof(num), "#%04zu", ordinal);
  std::string uid;
  if (!prefix.empty()) {
    uid.append(prefix);
    uid.push_back('/');
  }
  uid.append(block_key);
  uid.append(num);
  return uid;
}

std::vector<InventorGroup> NameGroups(std::string_view prefix,
                                      std::string_view block_key,
                                      std::span<const Group> groups) {
  std::vector<InventorGroup> out;
  out.reserve(groups.size());
  for (size_t k = 0; k < groups.size(); ++k) {
    out.push_back({MakeUid(prefix, block_key, k + 1), groups[k]});
  }
  return out;
}

std::map<std::string, std::string> AssignUids(
    std::span<const InventorGroup> groups, const DedupResult& dedup) {
  std::set<std::string> survivors;
  for (const Record& r : dedup.survivors) survivors.insert(r.record_id);
  std::set<std::string> uids;
  std::map<std::string, std::string> assignment;
  for (const InventorGroup& g : groups) {
    if (!uids.insert(g.uid).second) {
      throw Error(ErrorCode::kPartitionViolation, "uid " + g.uid + " reused");
    }
    for (const std::string& id : g.members) {
      if (!survivors.contains(id)) {
        throw Error(ErrorCode::kPartitionViolation,
                    "record " + id + " in group " + g.uid +
                        " is not a surviving record");
      }
      const auto [it, inserted] = assignment.emplace(id, g.uid);
      if (!inserted) {
        throw Error(ErrorCode::kPartitionViolation,
                    "record " + id + " is in groups " + it->second + " and " +
                        g.uid);
      }
    }
  }
  for (const std::string& id : survivors) {
    if (!assignment.contains(id)) {
      throw Error(ErrorCode::kPartitionViolation,
                  "record " + id + " is in no group");
    }
  }
  return PropagateIds(assignment, dedup);
}

}  // namespace disambig
