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

#include "digat/similarity.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include "digat/errors.h"

namespace digat {
namespace {

void Normalize(std::span<double> v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  if (sq == 0.0) return;
  const double norm = std::sqrt(sq);
  for (double& x : v) x /= norm;
}

double SparseDot(const SparseVector& a, const SparseVector& b) {
  double acc = 0.0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      acc += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return acc;
}

}  // namespace

double CosineSimilarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ContractError("cosine similarity of vectors with " +
                        std::to_string(a.size()) + " and " +
                        std::to_string(b.size()) + " components");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

std::string_view ProviderTag(ProviderKind kind) {
  return kind == ProviderKind::kTfidf ? "tfidf" : "embedding";
}

std::vector<ScoredNews> SimilarityProvider::RetrieveTopM(
    std::string_view query, std::size_t m,
    const std::unordered_set<std::string>& exclude) const {
  if (!Contains(query)) {
    throw LookupError("similarity provider has no vector for news " +
                      std::string(query));
  }
  if (m == 0) throw ContractError("retrieval size M must be at least 1");
  std::vector<double> scores;
  ScoreCorpus(query, scores);
  std::vector<std::size_t> eligible;
  eligible.reserve(corpus_.size());
  for (std::size_t i = 0; i < corpus_.size(); ++i) {
    if (corpus_[i] == query || exclude.contains(corpus_[i])) continue;
    eligible.push_back(i);
  }
  // corpus_ is sorted, so comparing indices breaks ties by ascending id.
  auto better = [&](std::size_t x, std::size_t y) {
    if (scores[x] != scores[y]) return scores[x] > scores[y];
    return x < y;
  };
  const std::size_t k = std::min(m, eligible.size());
  std::partial_sort(eligible.begin(),
                    eligible.begin() + static_cast<std::ptrdiff_t>(k),
                    eligible.end(), better);
  std::vector<ScoredNews> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back({corpus_[eligible[i]], scores[eligible[i]]});
  }
  return out;
}

TfidfProvider TfidfProvider::Build(std::span<const NewsItem> corpus,
                                   std::span<const NewsItem> extra) {
  if (corpus.empty()) throw ContractError("TF-IDF needs a non-empty corpus");
  TfidfProvider p;
  std::map<std::string, const NewsItem*> docs;
  for (const NewsItem& item : corpus) docs.emplace(item.news_id, &item);
  for (const auto& [id, item] : docs) p.corpus_.push_back(id);

  auto term_counts = [](const NewsItem& item) {
    std::map<int, double> tf;
    for (int t : item.title_tokens) {
      if (t == kPadTokenId || t == kUnkTokenId) continue;
      tf[t] += 1.0;
    }
    return tf;
  };

  std::unordered_map<int, std::size_t> df;
  for (const auto& [id, item] : docs) {
    for (const auto& [t, c] : term_counts(*item)) ++df[t];
  }
  const double n = static_cast<double>(docs.size());
  for (const auto& [t, f] : df) {
    p.idf_[t] = std::log(n / (1.0 + static_cast<double>(f))) + 1.0;
  }

  auto vectorize = [&](const NewsItem& item) {
    SparseVector v;
    for (const auto& [t, c] : term_counts(item)) {
      auto it = p.idf_.find(t);
      const double idf = it != p.idf_.end() ? it->second : std::log(n) + 1.0;
      v.emplace_back(t, c * idf);
    }
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i].second;
    Normalize(w);
    for (std::size_t i = 0; i < v.size(); ++i) v[i].second = w[i];
    return v;
  };

  for (std::size_t i = 0; i < p.corpus_.size(); ++i) {
    SparseVector v = vectorize(*docs.at(p.corpus_[i]));
    for (const auto& [t, w] : v) p.postings_[t].emplace_back(i, w);
    p.vectors_.emplace(p.corpus_[i], std::move(v));
  }
  for (const NewsItem& item : extra) {
    if (p.vectors_.contains(item.news_id)) continue;
    p.vectors_.emplace(item.news_id, vectorize(item));
  }
  return p;
}

bool TfidfProvider::Contains(std::string_view news_id) const {
  return vectors_.contains(std::string(news_id));
}

const SparseVector& TfidfProvider::Vector(std::string_view news_id) const {
  auto it = vectors_.find(std::string(news_id));
  if (it == vectors_.end()) {
    throw LookupError("no TF-IDF vector for news " + std::string(news_id));
  }
  return it->second;
}

double TfidfProvider::Idf(int token) const {
  auto it = idf_.find(token);
  return it == idf_.end() ? 0.0 : it->second;
}

double TfidfProvider::Similarity(std::string_view a, std::string_view b) const {
  return SparseDot(Vector(a), Vector(b));
}

void TfidfProvider::ScoreCorpus(std::string_view query,
                                std::vector<double>& scores) const {
  scores.assign(corpus_.size(), 0.0);
  for (const auto& [t, w] : Vector(query)) {
    auto it = postings_.find(t);
    if (it == postings_.end()) continue;
    for (const auto& [doc, dw] : it->second) scores[doc] += w * dw;
  }
}

EmbeddingProvider EmbeddingProvider::FromVectors(
    std::vector<std::pair<std::string, std::vector<double>>> vectors,
    std::span<const std::string> corpus_ids) {
  EmbeddingProvider p;
  for (auto& [id, v] : vectors) {
    if (p.rows_.empty()) p.dim_ = v.size();
    if (v.size() != p.dim_) {
      throw ParseError("vector for news " + id + " has " +
                       std::to_string(v.size()) + " components, expected " +
                       std::to_string(p.dim_));
    }
    if (!p.rows_.emplace(id, p.rows_.size()).second) {
      throw ParseError("duplicate vector for news " + id);
    }
    Normalize(v);
    p.data_.insert(p.data_.end(), v.begin(), v.end());
  }
  std::vector<std::string> missing;
  for (const std::string& id : corpus_ids) {
    if (!p.rows_.contains(id)) missing.push_back(id);
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) {
      list += (i ? ", " : "") + missing[i];
    }
    if (missing.size() > 20) list += ", ...";
    throw LookupError(std::to_string(missing.size()) +
                      " corpus news lack an embedding: " + list);
  }
  p.corpus_.assign(corpus_ids.begin(), corpus_ids.end());
  std::sort(p.corpus_.begin(), p.corpus_.end());
  p.corpus_.erase(std::unique(p.corpus_.begin(), p.corpus_.end()),
                  p.corpus_.end());
  for (const std::string& id : p.corpus_) p.corpus_rows_.push_back(p.rows_.at(id));
  return p;
}

bool EmbeddingProvider::Contains(std::string_view news_id) const {
  return rows_.contains(std::string(news_id));
}

std::span<const double> EmbeddingProvider::Vector(
    std::string_view news_id) const {
  auto it = rows_.find(std::string(news_id));
  if (it == rows_.end()) {
    throw LookupError("no embedding for news " + std::string(news_id));
  }
  return {data_.data() + it->second * dim_, dim_};
}

double EmbeddingProvider::Similarity(std::string_view a,
                                     std::string_view b) const {
  auto x = Vector(a);
  auto y = Vector(b);
  double acc = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) acc += x[i] * y[i];
  return acc;
}

void EmbeddingProvider::ScoreCorpus(std::string_view query,
                                    std::vector<double>& scores) const {
  auto q = Vector(query);
  scores.assign(corpus_.size(), 0.0);
  for (std::size_t i = 0; i < corpus_rows_.size(); ++i) {
    const double* row = data_.data() + corpus_rows_[i] * dim_;
    double acc = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) acc += q[c] * row[c];
    scores[i] = acc;
  }
}

TfidfProvider BuildTfidfVectors(std::span<const NewsItem> corpus,
                                std::span<const NewsItem> extra) {
  return TfidfProvider::Build(corpus, extra);
}

EmbeddingProvider LoadEmbeddingStore(const std::filesystem::path& path,
                                     std::span<const std::string> corpus_ids) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open embedding store " + path.string());
  std::vector<std::pair<std::string, std::vector<double>>> vectors;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0, dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError(where + ": expected news_id<TAB>vector");
    }
    std::string id = line.substr(0, tab);
    if (!seen.insert(id).second) {
      throw ParseError(where + ": duplicate embedding for news " + id);
    }
    std::vector<double> v;
    const char* p = line.data() + tab + 1;
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      if (p == end) break;
      double x;
      auto [next, ec] = std::from_chars(p, end, x);
      if (ec != std::errc()) {
        throw ParseError(where + ": bad number in vector for news " + id);
      }
      v.push_back(x);
      p = next;
    }
    if (v.empty()) throw ParseError(where + ": empty vector for news " + id);
    if (vectors.empty()) dim = v.size();
    if (v.size() != dim) {
      throw ParseError(where + ": vector for news " + id + " has " +
                       std::to_string(v.size()) + " components, expected " +
                       std::to_string(dim));
    }
    vectors.emplace_back(std::move(id), std::move(v));
  }
  return EmbeddingProvider::FromVectors(std::move(vectors), corpus_ids);
}

}  // namespace digat
