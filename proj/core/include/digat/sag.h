// Copyright 2026 The DIGAT Authors.
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

#ifndef DIGAT_SAG_H_
#define DIGAT_SAG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "digat/similarity.h"

namespace digat {

// Rooted undirected graph of semantically related news around a candidate.
// Node 0 is the candidate; hops[i] is the hop count at which node i was
// first reached.
struct SemanticAugmentedGraph {
  std::vector<std::string> nodes;
  std::vector<int> hops;
  // Undirected, stored as (smaller index, larger index) in insertion order.
  std::vector<std::pair<int, int>> edges;
  int m = 0;
  int k = 0;
  std::string provider_tag;

  const std::string& root() const { return nodes.front(); }
  std::size_t num_nodes() const { return nodes.size(); }

  // Neighbor lists in node-index space, each in edge insertion order.
  std::vector<std::vector<int>> Adjacency() const;
  std::vector<std::pair<int, int>> SortedEdges() const;

  // Structural equality: node order, hops, edge set, build parameters.
  friend bool operator==(const SemanticAugmentedGraph& a,
                         const SemanticAugmentedGraph& b);
};

// ContractError describing the first violated invariant: nonempty, unique
// nodes, hop(root) == 0, hops within [1, k] elsewhere, edges in range with no
// self loops or duplicates, every node connected to the root.
void ValidateSag(const SemanticAugmentedGraph& graph);

// Upper bound 1 + m + m^2 + ... + m^k on the node count.
std::size_t MaxSagNodes(int m, int k);

// Memoizes RetrieveTopM results of one provider for one m across builds.
class RetrievalCache {
 public:
  RetrievalCache(const SimilarityProvider& provider, std::size_t m)
      : provider_(provider), m_(m) {}
  const std::vector<ScoredNews>& Get(const std::string& news_id);

 private:
  const SimilarityProvider& provider_;
  std::size_t m_;
  std::map<std::string, std::vector<ScoredNews>> cache_;
};

// Breadth-first graph extension: the frontier starts at the root; each
// popped node retrieves its m nearest corpus news; unseen ones are added at
// hop(parent) + 1 and enqueued while their hop is below k; an undirected edge
// to every retrieved node is added once.
SemanticAugmentedGraph BuildSag(const std::string& candidate,
                                const SimilarityProvider& provider, int m,
                                int k, RetrievalCache* cache = nullptr);

// Plain-text cache: a header line with the config hash and graph count, then
// per graph a "graph" header (candidate, m, k, provider), a node table
// (news_id, hop) and an edge list of node-index pairs.
struct SagCache {
  std::uint64_t config_hash = 0;
  std::vector<SemanticAugmentedGraph> graphs;
};

void WriteSagCache(std::ostream& out, const SagCache& cache);
void WriteSagCache(const std::filesystem::path& path, const SagCache& cache);
// ParseError with line number and byte offset on malformed input, including
// edges referring to nonexistent nodes.
SagCache ReadSagCache(std::istream& in, const std::string& source = "<stream>");
SagCache ReadSagCache(const std::filesystem::path& path);

}  // namespace digat

#endif  // DIGAT_SAG_H_
