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

#include "digat/sag.h"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <unordered_map>

#include "digat/errors.h"

namespace digat {

std::vector<std::vector<int>> SemanticAugmentedGraph::Adjacency() const {
  std::vector<std::vector<int>> adj(nodes.size());
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

std::vector<std::pair<int, int>> SemanticAugmentedGraph::SortedEdges() const {
  auto sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

bool operator==(const SemanticAugmentedGraph& a,
                const SemanticAugmentedGraph& b) {
  return a.nodes == b.nodes && a.hops == b.hops && a.m == b.m && a.k == b.k &&
         a.provider_tag == b.provider_tag &&
         a.SortedEdges() == b.SortedEdges();
}

void ValidateSag(const SemanticAugmentedGraph& g) {
  if (g.nodes.empty()) throw ContractError("SAG has no root");
  if (g.hops.size() != g.nodes.size()) {
    throw ContractError("SAG hop table does not match its node table");
  }
  std::set<std::string> unique(g.nodes.begin(), g.nodes.end());
  if (unique.size() != g.nodes.size()) {
    throw ContractError("SAG for " + g.root() + " has duplicate nodes");
  }
  if (g.hops[0] != 0) throw ContractError("SAG root hop must be 0");
  for (std::size_t i = 1; i < g.hops.size(); ++i) {
    if (g.hops[i] < 1 || g.hops[i] > g.k) {
      throw ContractError("SAG node " + g.nodes[i] + " has hop " +
                          std::to_string(g.hops[i]) + " outside [1, " +
                          std::to_string(g.k) + "]");
    }
  }
  std::set<std::pair<int, int>> seen;
  const int n = static_cast<int>(g.nodes.size());
  for (const auto& [a, b] : g.edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw ContractError("SAG edge endpoint out of range");
    }
    if (a == b) throw ContractError("SAG has a self edge on " + g.nodes[a]);
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) {
      throw ContractError("SAG has a duplicate edge");
    }
  }
  auto adj = g.Adjacency();
  std::vector<bool> reached(g.nodes.size(), false);
  std::deque<int> queue{0};
  reached[0] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int u : adj[v]) {
      if (!reached[u]) {
        reached[u] = true;
        queue.push_back(u);
      }
    }
  }
  for (std::size_t i = 0; i < reached.size(); ++i) {
    if (!reached[i]) {
      throw ContractError("SAG node " + g.nodes[i] +
                          " is not connected to the root");
    }
  }
}

std::size_t MaxSagNodes(int m, int k) {
  std::size_t total = 1, layer = 1;
  for (int i = 0; i < k; ++i) {
    layer *= static_cast<std::size_t>(m);
    total += layer;
  }
  return total;
}

const std::vector<ScoredNews>& RetrievalCache::Get(const std::string& news_id) {
  auto it = cache_.find(news_id);
  if (it == cache_.end()) {
    it = cache_.emplace(news_id, provider_.RetrieveTopM(news_id, m_)).first;
  }
  return it->second;
}

SemanticAugmentedGraph BuildSag(const std::string& candidate,
                                const SimilarityProvider& provider, int m,
                                int k, RetrievalCache* cache) {
  if (m < 1) throw ContractError("SAG needs M >= 1");
  if (k < 0) throw ContractError("SAG needs K >= 0");
  if (!provider.Contains(candidate)) {
    throw LookupError("no similarity vector for candidate news " + candidate);
  }
  SemanticAugmentedGraph g;
  g.m = m;
  g.k = k;
  g.provider_tag = std::string(provider.tag());
  g.nodes.push_back(candidate);
  g.hops.push_back(0);
  if (k == 0) return g;

  std::unordered_map<std::string, int> index{{candidate, 0}};
  std::set<std::pair<int, int>> edge_set;
  std::deque<int> frontier{0};
  std::vector<ScoredNews> local;
  while (!frontier.empty()) {
    const int parent = frontier.front();
    frontier.pop_front();
    const std::string& parent_id = g.nodes[parent];
    const std::vector<ScoredNews>* retrieved;
    if (cache) {
      retrieved = &cache->Get(parent_id);
    } else {
      local = provider.RetrieveTopM(parent_id, static_cast<std::size_t>(m));
      retrieved = &local;
    }
    // Copy ids first: appending to g.nodes may invalidate parent_id.
    std::vector<std::string> ids;
    for (const ScoredNews& s : *retrieved) ids.push_back(s.news_id);
    for (const std::string& id : ids) {
      auto [it, inserted] = index.emplace(id, static_cast<int>(g.nodes.size()));
      const int child = it->second;
      if (inserted) {
        g.nodes.push_back(id);
        g.hops.push_back(g.hops[parent] + 1);
        if (g.hops[child] < k) frontier.push_back(child);
      }
      if (child == parent) continue;
      const std::pair<int, int> e{std::min(parent, child),
                                  std::max(parent, child)};
      if (edge_set.insert(e).second) g.edges.push_back(e);
    }
  }
  return g;
}

void WriteSagCache(std::ostream& out, const SagCache& cache) {
  out << "digat-sag-cache 1\n";
  out << "config_hash " << std::hex << std::setw(16) << std::setfill('0')
      << cache.config_hash << std::dec << std::setfill(' ') << '\n';
  out << "graphs " << cache.graphs.size() << '\n';
  for (const SemanticAugmentedGraph& g : cache.graphs) {
    out << "graph " << g.root() << ' ' << g.m << ' ' << g.k << ' '
        << g.provider_tag << '\n';
    out << "nodes " << g.nodes.size() << '\n';
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      out << g.nodes[i] << '\t' << g.hops[i] << '\n';
    }
    out << "edges " << g.edges.size() << '\n';
    for (const auto& [a, b] : g.edges) out << a << '\t' << b << '\n';
  }
}

void WriteSagCache(const std::filesystem::path& path, const SagCache& cache) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write SAG cache " + path.string());
  WriteSagCache(out, cache);
  if (!out) throw IoError("failed writing SAG cache " + path.string());
}

namespace {

class LineReader {
 public:
  LineReader(std::istream& in, std::string source)
      : in_(in), source_(std::move(source)) {}

  std::vector<std::string> Next(std::size_t expected_fields) {
    std::string line;
    line_offset_ = offset_;
    if (!std::getline(in_, line)) Fail("unexpected end of file");
    ++line_no_;
    offset_ += line.size() + 1;
    std::vector<std::string> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) fields.push_back(line.substr(i, j - i));
      i = j;
    }
    if (fields.size() != expected_fields) {
      Fail("expected " + std::to_string(expected_fields) + " fields, found " +
           std::to_string(fields.size()));
    }
    return fields;
  }

  void Expect(const std::string& got, const char* keyword) {
    if (got != keyword) Fail(std::string("expected '") + keyword + "'");
  }

  long long Int(const std::string& s) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      Fail("bad integer '" + s + "'");
    }
    return v;
  }

  bool AtEnd() {
    return in_.peek() == std::char_traits<char>::eof();
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError(source_ + ": line " + std::to_string(line_no_) +
                     " (byte offset " + std::to_string(line_offset_) +
                     "): " + what);
  }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_no_ = 0;
  std::size_t offset_ = 0;
  std::size_t line_offset_ = 0;
};

}  // namespace

SagCache ReadSagCache(std::istream& in, const std::string& source) {
  LineReader r(in, source);
  SagCache cache;
  auto magic = r.Next(2);
  r.Expect(magic[0], "digat-sag-cache");
  if (magic[1] != "1") r.Fail("unsupported cache version " + magic[1]);
  auto hash = r.Next(2);
  r.Expect(hash[0], "config_hash");
  {
    std::uint64_t v = 0;
    const std::string& s = hash[1];
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
    if (ec != std::errc() || p != s.data() + s.size()) r.Fail("bad hash");
    cache.config_hash = v;
  }
  auto count = r.Next(2);
  r.Expect(count[0], "graphs");
  const long long num_graphs = r.Int(count[1]);
  if (num_graphs < 0) r.Fail("negative graph count");
  for (long long gi = 0; gi < num_graphs; ++gi) {
    SemanticAugmentedGraph g;
    auto head = r.Next(5);
    r.Expect(head[0], "graph");
    g.m = static_cast<int>(r.Int(head[2]));
    g.k = static_cast<int>(r.Int(head[3]));
    g.provider_tag = head[4];
    auto nodes = r.Next(2);
    r.Expect(nodes[0], "nodes");
    const long long n = r.Int(nodes[1]);
    if (n < 1) r.Fail("graph needs at least the root node");
    for (long long i = 0; i < n; ++i) {
      auto row = r.Next(2);
      g.nodes.push_back(row[0]);
      g.hops.push_back(static_cast<int>(r.Int(row[1])));
    }
    if (g.root() != head[1]) r.Fail("root does not match graph header");
    auto edges = r.Next(2);
    r.Expect(edges[0], "edges");
    const long long e = r.Int(edges[1]);
    if (e < 0) r.Fail("negative edge count");
    for (long long i = 0; i < e; ++i) {
      auto row = r.Next(2);
      const long long a = r.Int(row[0]), b = r.Int(row[1]);
      if (a < 0 || b < 0 || a >= n || b >= n) {
        r.Fail("edge (" + row[0] + ", " + row[1] + ") references a missing node");
      }
      g.edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
    try {
      ValidateSag(g);
    } catch (const ContractError& err) {
      r.Fail(err.what());
    }
    cache.graphs.push_back(std::move(g));
  }
  if (!r.AtEnd()) {
    std::string rest;
    std::getline(in, rest);
    if (!rest.empty()) r.Fail("trailing content after last graph");
  }
  return cache;
}

SagCache ReadSagCache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open SAG cache " + path.string());
  return ReadSagCache(in, path.string());
}

}  // namespace digat
