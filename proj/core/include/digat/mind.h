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

#ifndef DIGAT_MIND_H_
#define DIGAT_MIND_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "digat/random.h"
#include "digat/tensor.h"

namespace digat {

inline constexpr int kPadTokenId = 0;
inline constexpr int kUnkTokenId = 1;
inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kUnkToken = "<unk>";

// Stand-in for missing history slots: all-pad title, its own topic.
inline constexpr std::string_view kPlaceholderNewsId = "<empty>";
inline constexpr std::string_view kPlaceholderTopic = "<none>";
// Topic row for categories never seen in training.
inline constexpr std::string_view kUnknownTopic = "<unk>";

// Lowercases, splits on whitespace and strips punctuation surrounding each
// piece. Pieces that are pure punctuation vanish.
std::vector<std::string> Tokenize(std::string_view text);

// One row of a MIND news.tsv file before vocabulary lookup.
struct NewsRecord {
  std::string news_id;
  std::string category;
  std::string subcategory;
  std::string title;
  std::vector<std::string> words;
};

// Reads a tab-separated news file (news_id, category, subcategory, title,
// abstract, url, title_entities, abstract_entities; only the first four are
// required). A duplicate id keeps its first occurrence and emits a warning.
std::vector<NewsRecord> ReadNewsFile(const std::filesystem::path& path);

class Vocabulary {
 public:
  // Ids: 0 = pad, 1 = unk, then tokens in order of first appearance.
  static Vocabulary Build(std::span<const NewsRecord> training_news,
                          std::size_t embedding_dim);

  int Lookup(std::string_view token) const;
  const std::string& Token(int id) const { return tokens_.at(id); }
  std::size_t size() const { return tokens_.size(); }
  std::size_t embedding_dim() const { return embedding_dim_; }

  // One "token\tid" line per entry.
  void Write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
  std::size_t embedding_dim_ = 0;
};

struct NewsItem {
  std::string news_id;
  std::string topic;
  std::string title;
  // Exactly title_len ids, padded with kPadTokenId.
  std::vector<int> title_tokens;

  bool IsEmpty() const;
};

NewsItem MakeNewsItem(const NewsRecord& record, const Vocabulary& vocab,
                      std::size_t title_len);
NewsItem MakePlaceholderNews(std::size_t title_len);

std::vector<NewsItem> ParseNewsFile(const std::filesystem::path& path,
                                    const Vocabulary& vocab,
                                    std::size_t title_len);

// Immutable-after-load lookup of news by id; always contains the
// placeholder.
class NewsStore {
 public:
  explicit NewsStore(std::size_t title_len);

  // Returns false (and keeps the existing item) on duplicates.
  bool Add(NewsItem item);
  const NewsItem* Find(std::string_view news_id) const;
  // LookupError when absent.
  const NewsItem& Get(std::string_view news_id) const;
  const NewsItem& placeholder() const { return *Find(kPlaceholderNewsId); }
  std::size_t size() const { return items_.size(); }
  std::size_t title_len() const { return title_len_; }

  // Ids in insertion order, excluding the placeholder.
  const std::vector<std::string>& ids() const { return order_; }

 private:
  std::size_t title_len_;
  std::unordered_map<std::string, NewsItem> items_;
  std::vector<std::string> order_;
};

struct Candidate {
  std::string news_id;
  int label = 0;
};

struct ImpressionRecord {
  std::string impression_id;
  std::string user_id;
  // Exactly history_len ids, most recent last; left-padded with the
  // placeholder id.
  std::vector<std::string> history;
  std::vector<Candidate> candidates;
};

// Reads a tab-separated behaviors file (impression_id, user_id, time,
// history, impressions). Records with an empty candidate list are dropped
// with a warning.
std::vector<ImpressionRecord> ParseBehaviorsFile(
    const std::filesystem::path& path, std::size_t history_len);

// LookupError naming the first id that neither resolves in `store` nor is
// the placeholder.
void ValidateReferences(std::span<const ImpressionRecord> impressions,
                        const NewsStore& store);

// |V| x dim matrix: uniform(-0.1, 0.1) rows drawn in id order, the pad row
// zero, and rows found in the embedding file (if any) copied verbatim.
Tensor InitWordEmbeddings(const Vocabulary& vocab, Rng& rng);
Tensor LoadWordEmbeddings(const std::filesystem::path& path,
                          const Vocabulary& vocab, Rng& rng);

struct TrainingExample {
  std::string impression_id;
  const ImpressionRecord* impression = nullptr;
  std::string positive;
  std::vector<std::string> negatives;
};

// One example per clicked candidate. Negatives come from the impression's
// non-clicked candidates: without replacement when at least S exist, with
// replacement otherwise. Impressions without negatives yield nothing.
std::vector<TrainingExample> SampleNegatives(const ImpressionRecord& record,
                                             std::size_t num_negatives,
                                             Rng& rng);

}  // namespace digat

#endif  // DIGAT_MIND_H_
