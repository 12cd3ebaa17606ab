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

#ifndef DIGAT_SIMILARITY_H_
#define DIGAT_SIMILARITY_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "digat/mind.h"

namespace digat {

// Cosine of the angle between a and b; 0 when either is the zero vector.
// Mismatched lengths raise ContractError.
double CosineSimilarity(std::span<const double> a, std::span<const double> b);

enum class ProviderKind { kTfidf, kEmbedding };
std::string_view ProviderTag(ProviderKind kind);

struct ScoredNews {
  std::string news_id;
  double score = 0.0;
};

// Similarity backend for neighbor retrieval. Every provider knows vectors
// for a set of news and retrieves only from its corpus, a subset of those.
class SimilarityProvider {
 public:
  virtual ~SimilarityProvider() = default;

  virtual ProviderKind kind() const = 0;
  std::string_view tag() const { return ProviderTag(kind()); }

  virtual bool Contains(std::string_view news_id) const = 0;
  // Symmetric; LookupError for unknown ids.
  virtual double Similarity(std::string_view a, std::string_view b) const = 0;

  // Retrievable ids, ascending.
  const std::vector<std::string>& corpus() const { return corpus_; }

  // The m best-scoring corpus entries other than the query and `exclude`,
  // best first, equal scores ordered by ascending id. Returns everything
  // eligible when fewer than m remain.
  std::vector<ScoredNews> RetrieveTopM(
      std::string_view query, std::size_t m,
      const std::unordered_set<std::string>& exclude = {}) const;

 protected:
  // scores[i] = similarity(query, corpus()[i]).
  virtual void ScoreCorpus(std::string_view query,
                           std::vector<double>& scores) const = 0;

  std::vector<std::string> corpus_;
};

using SparseVector = std::vector<std::pair<int, double>>;

// tf(t, d) * idf(t) with idf(t) = ln(|C| / (1 + df(t))) + 1 computed over the
// corpus, L2-normalized. Pad and unk tokens carry no weight.
class TfidfProvider : public SimilarityProvider {
 public:
  // `corpus` defines document frequencies and the retrievable set; `extra`
  // news (for example test candidates) are vectorized with the same idf but
  // never retrieved.
  static TfidfProvider Build(std::span<const NewsItem> corpus,
                             std::span<const NewsItem> extra = {});

  ProviderKind kind() const override { return ProviderKind::kTfidf; }
  bool Contains(std::string_view news_id) const override;
  double Similarity(std::string_view a, std::string_view b) const override;

  const SparseVector& Vector(std::string_view news_id) const;
  // idf of a token id, or 0 when it never occurs in the corpus.
  double Idf(int token) const;

 protected:
  void ScoreCorpus(std::string_view query,
                   std::vector<double>& scores) const override;

 private:
  std::unordered_map<std::string, SparseVector> vectors_;
  std::unordered_map<int, double> idf_;
  // token -> (corpus index, weight)
  std::unordered_map<int, std::vector<std::pair<std::size_t, double>>>
      postings_;
};

// Dense per-news vectors supplied by an external encoder, L2-normalized on
// load so similarity is a dot product.
class EmbeddingProvider : public SimilarityProvider {
 public:
  // Every corpus id must have a vector.
  static EmbeddingProvider FromVectors(
      std::vector<std::pair<std::string, std::vector<double>>> vectors,
      std::span<const std::string> corpus_ids);

  ProviderKind kind() const override { return ProviderKind::kEmbedding; }
  bool Contains(std::string_view news_id) const override;
  double Similarity(std::string_view a, std::string_view b) const override;

  std::span<const double> Vector(std::string_view news_id) const;
  std::size_t dim() const { return dim_; }

 protected:
  void ScoreCorpus(std::string_view query,
                   std::vector<double>& scores) const override;

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::size_t> rows_;
  std::vector<double> data_;
  std::vector<std::size_t> corpus_rows_;
};

TfidfProvider BuildTfidfVectors(std::span<const NewsItem> corpus,
                                std::span<const NewsItem> extra = {});

// Lines "news_id<TAB>f1 f2 ... fD". Duplicate ids and inconsistent D are
// ParseErrors; corpus ids without a vector are a LookupError listing them.
EmbeddingProvider LoadEmbeddingStore(const std::filesystem::path& path,
                                     std::span<const std::string> corpus_ids);

}  // namespace digat

#endif  // DIGAT_SIMILARITY_H_
