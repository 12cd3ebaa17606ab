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

#include "sag_oracle.h"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <memory>
#include <tuple>

#include "digat/errors.h"

namespace digat::testing {

MatrixProvider::MatrixProvider(std::vector<std::string> ids,
                               std::vector<double> scores)
    : scores_(std::move(scores)) {
  for (std::size_t i = 0; i < ids.size(); ++i) index_.emplace(ids[i], i);
  corpus_ = std::move(ids);
  std::sort(corpus_.begin(), corpus_.end());
}

std::size_t MatrixProvider::Index(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw LookupError("no row for " + std::string(id));
  return it->second;
}

bool MatrixProvider::Contains(std::string_view id) const {
  return index_.find(id) != index_.end();
}

double MatrixProvider::Similarity(std::string_view a, std::string_view b) const {
  return scores_[Index(a) * index_.size() + Index(b)];
}

void MatrixProvider::ScoreCorpus(std::string_view query,
                                 std::vector<double>& scores) const {
  scores.clear();
  for (const std::string& id : corpus_) scores.push_back(Similarity(query, id));
}

std::vector<std::string> NumberedIds(std::size_t n) {
  std::vector<std::string> ids;
  char buf[16];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof(buf), "d%03zu", i);
    ids.emplace_back(buf);
  }
  return ids;
}

MatrixProvider RandomMatrixProvider(std::size_t n, std::size_t levels, Rng& rng) {
  std::vector<double> s(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = static_cast<double>(rng.UniformInt(levels)) /
                       static_cast<double>(levels);
      s[i * n + j] = s[j * n + i] = v;
    }
  }
  return MatrixProvider(NumberedIds(n), std::move(s));
}

EmbeddingProvider RandomEmbeddingProvider(std::size_t n, std::size_t dim,
                                          Rng& rng) {
  auto ids = NumberedIds(n);
  std::vector<std::pair<std::string, std::vector<double>>> vectors;
  for (const auto& id : ids) {
    std::vector<double> v(dim);
    for (double& x : v) x = rng.Normal();
    vectors.emplace_back(id, std::move(v));
  }
  return EmbeddingProvider::FromVectors(std::move(vectors), ids);
}

OracleGraph BruteForceSag(const std::string& root,
                          const SimilarityProvider& provider, int m, int k) {
  OracleGraph g;
  g.root = root;
  g.hops[root] = 0;
  std::deque<std::pair<std::string, int>> queue = {{root, 0}};
  while (!queue.empty()) {
    auto [v, hop] = queue.front();
    queue.pop_front();
    if (hop >= k) continue;
    std::vector<std::tuple<double, std::string>> ranked;
    for (const std::string& u : provider.corpus()) {
      if (u != v) ranked.emplace_back(provider.Similarity(v, u), u);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
      return std::get<1>(a) < std::get<1>(b);
    });
    for (int i = 0; i < m && i < static_cast<int>(ranked.size()); ++i) {
      const std::string& u = std::get<1>(ranked[i]);
      if (!g.hops.contains(u)) {
        g.hops[u] = hop + 1;
        queue.emplace_back(u, hop + 1);
      }
      g.edges.insert(std::minmax(u, v));
    }
  }
  return g;
}

std::string CompareWithOracle(const SemanticAugmentedGraph& graph,
                              const OracleGraph& oracle) {
  if (graph.nodes.empty() || graph.root() != oracle.root) return "root differs";
  std::map<std::string, int> hops;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    if (!hops.emplace(graph.nodes[i], graph.hops[i]).second) {
      return "duplicate node " + graph.nodes[i];
    }
  }
  if (hops != oracle.hops) {
    return "node/hop sets differ: " + std::to_string(hops.size()) + " vs " +
           std::to_string(oracle.hops.size()) + " nodes";
  }
  std::set<std::pair<std::string, std::string>> edges;
  for (auto [a, b] : graph.edges) {
    edges.insert(std::minmax(graph.nodes[a], graph.nodes[b]));
  }
  if (edges.size() != graph.edges.size()) return "duplicate edges";
  if (edges != oracle.edges) {
    return "edge sets differ: " + std::to_string(edges.size()) + " vs " +
           std::to_string(oracle.edges.size());
  }
  return {};
}

OracleTrialReport RunOracleTrials(std::size_t trials, std::uint64_t seed) {
  OracleTrialReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(DeriveSeed(seed, t));
    const std::size_t n = 2 + rng.UniformInt(49);
    std::unique_ptr<SimilarityProvider> provider;
    if (t % 2 == 0) {
      provider = std::make_unique<MatrixProvider>(
          RandomMatrixProvider(n, 2 + rng.UniformInt(6), rng));
    } else {
      provider = std::make_unique<EmbeddingProvider>(
          RandomEmbeddingProvider(n, 2 + rng.UniformInt(8), rng));
    }
    for (int m = 1; m <= 4; ++m) {
      for (int k = 0; k <= 3; ++k) {
        for (int r = 0; r < 3; ++r) {
          const std::string root = provider->corpus()[rng.UniformInt(n)];
          auto graph = BuildSag(root, *provider, m, k);
          ++report.graphs;
          std::string diff = CompareWithOracle(graph, BruteForceSag(root, *provider, m, k));
          if (!diff.empty()) {
            if (report.mismatches++ == 0) {
              report.first_mismatch = "trial " + std::to_string(t) + " root " +
                                      root + " M=" + std::to_string(m) +
                                      " K=" + std::to_string(k) + ": " + diff;
            }
          }
        }
      }
    }
  }
  return report;
}

}  // namespace digat::testing
