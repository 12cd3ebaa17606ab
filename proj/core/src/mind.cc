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

#include "digat/mind.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "digat/errors.h"

namespace digat {
namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::vector<std::string_view> SplitSpaces(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
      ++j;
    if (j > i) parts.push_back(text.substr(i, j - i));
    i = j;
  }
  return parts;
}

std::ifstream OpenOrThrow(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

void StripCarriageReturn(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::string Where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  for (std::string_view piece : SplitSpaces(text)) {
    std::size_t b = 0, e = piece.size();
    while (b < e && std::ispunct(static_cast<unsigned char>(piece[b]))) ++b;
    while (e > b && std::ispunct(static_cast<unsigned char>(piece[e - 1]))) --e;
    if (b == e) continue;
    std::string token(piece.substr(b, e - b));
    for (char& c : token) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

std::vector<NewsRecord> ReadNewsFile(const std::filesystem::path& path) {
  std::ifstream in = OpenOrThrow(path);
  std::vector<NewsRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    StripCarriageReturn(line);
    if (line.empty()) continue;
    auto fields = SplitTabs(line);
    if (fields.size() < 4 || fields[0].empty()) {
      throw ParseError(Where(path, line_no) +
                       ": malformed news line (need news_id, category, "
                       "subcategory, title)");
    }
    NewsRecord r;
    r.news_id = std::string(fields[0]);
    if (!seen.insert(r.news_id).second) {
      Warn(Where(path, line_no) + ": duplicate news id " + r.news_id +
           "; keeping the first occurrence");
      continue;
    }
    r.category = std::string(fields[1]);
    r.subcategory = std::string(fields[2]);
    r.title = std::string(fields[3]);
    r.words = Tokenize(r.title);
    records.push_back(std::move(r));
  }
  return records;
}

Vocabulary Vocabulary::Build(std::span<const NewsRecord> training_news,
                             std::size_t embedding_dim) {
  Vocabulary v;
  v.embedding_dim_ = embedding_dim;
  v.tokens_ = {std::string(kPadToken), std::string(kUnkToken)};
  v.ids_.emplace(kPadToken, kPadTokenId);
  v.ids_.emplace(kUnkToken, kUnkTokenId);
  for (const NewsRecord& r : training_news) {
    for (const std::string& w : r.words) {
      if (v.ids_.emplace(w, static_cast<int>(v.tokens_.size())).second) {
        v.tokens_.push_back(w);
      }
    }
  }
  return v;
}

int Vocabulary::Lookup(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? kUnkTokenId : it->second;
}

void Vocabulary::Write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out << tokens_[i] << '\t' << i << '\n';
  }
}

bool NewsItem::IsEmpty() const {
  return std::all_of(title_tokens.begin(), title_tokens.end(),
                     [](int t) { return t == kPadTokenId; });
}

NewsItem MakeNewsItem(const NewsRecord& record, const Vocabulary& vocab,
                      std::size_t title_len) {
  NewsItem item;
  item.news_id = record.news_id;
  item.topic = record.category;
  item.title = record.title;
  item.title_tokens.assign(title_len, kPadTokenId);
  const std::size_t n = std::min(title_len, record.words.size());
  for (std::size_t i = 0; i < n; ++i) {
    item.title_tokens[i] = vocab.Lookup(record.words[i]);
  }
  return item;
}

NewsItem MakePlaceholderNews(std::size_t title_len) {
  NewsItem item;
  item.news_id = std::string(kPlaceholderNewsId);
  item.topic = std::string(kPlaceholderTopic);
  item.title_tokens.assign(title_len, kPadTokenId);
  return item;
}

std::vector<NewsItem> ParseNewsFile(const std::filesystem::path& path,
                                    const Vocabulary& vocab,
                                    std::size_t title_len) {
  std::vector<NewsItem> items;
  for (const NewsRecord& r : ReadNewsFile(path)) {
    items.push_back(MakeNewsItem(r, vocab, title_len));
  }
  return items;
}

NewsStore::NewsStore(std::size_t title_len) : title_len_(title_len) {
  NewsItem p = MakePlaceholderNews(title_len);
  items_.emplace(p.news_id, std::move(p));
}

bool NewsStore::Add(NewsItem item) {
  if (item.title_tokens.size() != title_len_) {
    throw ContractError("news " + item.news_id + " has " +
                        std::to_string(item.title_tokens.size()) +
                        " tokens, store expects " + std::to_string(title_len_));
  }
  std::string id = item.news_id;
  if (!items_.emplace(id, std::move(item)).second) return false;
  order_.push_back(std::move(id));
  return true;
}

const NewsItem* NewsStore::Find(std::string_view news_id) const {
  auto it = items_.find(std::string(news_id));
  return it == items_.end() ? nullptr : &it->second;
}

const NewsItem& NewsStore::Get(std::string_view news_id) const {
  const NewsItem* item = Find(news_id);
  if (!item) throw LookupError("unknown news id " + std::string(news_id));
  return *item;
}

std::vector<ImpressionRecord> ParseBehaviorsFile(
    const std::filesystem::path& path, std::size_t history_len) {
  std::ifstream in = OpenOrThrow(path);
  std::vector<ImpressionRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    StripCarriageReturn(line);
    if (line.empty()) continue;
    auto fields = SplitTabs(line);
    if (fields.size() < 5) {
      throw ParseError(Where(path, line_no) +
                       ": malformed behaviors line (need 5 tab-separated "
                       "fields)");
    }
    ImpressionRecord rec;
    rec.impression_id = std::string(fields[0]);
    rec.user_id = std::string(fields[1]);

    auto clicked = SplitSpaces(fields[3]);
    const std::size_t keep = std::min(history_len, clicked.size());
    rec.history.assign(history_len - keep, std::string(kPlaceholderNewsId));
    for (std::size_t i = clicked.size() - keep; i < clicked.size(); ++i) {
      rec.history.emplace_back(clicked[i]);
    }

    for (std::string_view pair : SplitSpaces(fields[4])) {
      const std::size_t dash = pair.rfind('-');
      if (dash == std::string_view::npos || dash == 0) {
        throw ParseError(Where(path, line_no) + ": candidate '" +
                         std::string(pair) + "' lacks a -0/-1 label");
      }
      std::string_view label = pair.substr(dash + 1);
      if (label != "0" && label != "1") {
        throw ParseError(Where(path, line_no) + ": candidate '" +
                         std::string(pair) + "' has label '" +
                         std::string(label) + "', expected 0 or 1");
      }
      rec.candidates.push_back(
          {std::string(pair.substr(0, dash)), label == "1" ? 1 : 0});
    }
    if (rec.candidates.empty()) {
      Warn(Where(path, line_no) + ": impression " + rec.impression_id +
           " has no candidates; skipped");
      continue;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void ValidateReferences(std::span<const ImpressionRecord> impressions,
                        const NewsStore& store) {
  for (const ImpressionRecord& r : impressions) {
    for (const std::string& id : r.history) {
      if (!store.Find(id)) {
        throw LookupError("impression " + r.impression_id +
                          " references unknown history news " + id);
      }
    }
    for (const Candidate& c : r.candidates) {
      if (!store.Find(c.news_id)) {
        throw LookupError("impression " + r.impression_id +
                          " references unknown candidate news " + c.news_id);
      }
    }
  }
}

Tensor InitWordEmbeddings(const Vocabulary& vocab, Rng& rng) {
  const std::size_t n = vocab.size(), dim = vocab.embedding_dim();
  std::vector<double> data(n * dim, 0.0);
  for (std::size_t row = 1; row < n; ++row) {
    for (std::size_t c = 0; c < dim; ++c) {
      data[row * dim + c] = rng.Uniform(-0.1, 0.1);
    }
  }
  return Tensor::FromData({n, dim}, std::move(data));
}

Tensor LoadWordEmbeddings(const std::filesystem::path& path,
                          const Vocabulary& vocab, Rng& rng) {
  Tensor table = InitWordEmbeddings(vocab, rng);
  auto data = table.mutable_data();
  const std::size_t dim = vocab.embedding_dim();
  std::ifstream in = OpenOrThrow(path);
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    StripCarriageReturn(line);
    auto parts = SplitSpaces(line);
    if (parts.empty()) continue;
    if (parts.size() - 1 != dim) {
      throw ParseError(Where(path, line_no) + ": vector for '" +
                       std::string(parts[0]) + "' has " +
                       std::to_string(parts.size() - 1) +
                       " components, expected " + std::to_string(dim));
    }
    const int id = vocab.Lookup(parts[0]);
    // Words outside the vocabulary map to unk; they must not overwrite it.
    if (id == kUnkTokenId || id == kPadTokenId) continue;
    values.assign(dim, 0.0);
    for (std::size_t c = 0; c < dim; ++c) {
      std::string_view s = parts[c + 1];
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), values[c]);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(Where(path, line_no) + ": bad number '" +
                         std::string(s) + "' in vector for '" +
                         std::string(parts[0]) + "'");
      }
    }
    std::copy(values.begin(), values.end(),
              data.begin() + static_cast<std::ptrdiff_t>(id * dim));
  }
  return table;
}

std::vector<TrainingExample> SampleNegatives(const ImpressionRecord& record,
                                             std::size_t num_negatives,
                                             Rng& rng) {
  std::vector<std::string> pool;
  std::vector<std::string> positives;
  for (const Candidate& c : record.candidates) {
    (c.label == 1 ? positives : pool).push_back(c.news_id);
  }
  std::vector<TrainingExample> examples;
  if (pool.empty() || num_negatives == 0) return examples;
  for (const std::string& pos : positives) {
    TrainingExample ex;
    ex.impression_id = record.impression_id;
    ex.impression = &record;
    ex.positive = pos;
    if (pool.size() >= num_negatives) {
      std::vector<std::string> shuffled = pool;
      // Partial Fisher-Yates: the first S slots form a uniform sample.
      for (std::size_t i = 0; i < num_negatives; ++i) {
        const std::size_t j = i + rng.UniformInt(shuffled.size() - i);
        std::swap(shuffled[i], shuffled[j]);
      }
      ex.negatives.assign(shuffled.begin(),
                          shuffled.begin() + static_cast<std::ptrdiff_t>(num_negatives));
    } else {
      for (std::size_t i = 0; i < num_negatives; ++i) {
        ex.negatives.push_back(pool[rng.UniformInt(pool.size())]);
      }
    }
    examples.push_back(std::move(ex));
  }
  return examples;
}

}  // namespace digat
