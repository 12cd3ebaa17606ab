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

#include "digat/pipeline.h"

#include <chrono>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "digat/errors.h"
#include "digat/random.h"

namespace digat {

std::vector<std::string> Corpus::TrainIds() const {
  std::vector<std::string> ids;
  ids.reserve(train_news.size());
  for (const NewsItem& item : train_news) ids.push_back(item.news_id);
  return ids;
}

std::vector<std::string> Corpus::CandidateIds(bool include_eval) const {
  std::vector<std::string> ids;
  std::unordered_set<std::string> seen;
  auto collect = [&](const std::vector<ImpressionRecord>& records) {
    for (const ImpressionRecord& r : records) {
      for (const Candidate& c : r.candidates) {
        if (seen.insert(c.news_id).second) ids.push_back(c.news_id);
      }
    }
  };
  collect(train_impressions);
  if (include_eval) collect(eval_impressions);
  return ids;
}

Corpus LoadCorpus(const RunConfig& config, bool with_eval) {
  if (config.train_news.empty()) throw ConfigError("train_news is not set");
  Corpus corpus;
  const std::size_t t = config.model.title_len;
  std::vector<NewsRecord> train = ReadNewsFile(config.Resolve(config.train_news));
  corpus.vocab = Vocabulary::Build(train, config.model.word_dim);
  corpus.news = NewsStore(t);
  for (const NewsRecord& r : train) {
    NewsItem item = MakeNewsItem(r, corpus.vocab, t);
    if (corpus.news.Add(item)) corpus.train_news.push_back(std::move(item));
  }
  corpus.topics = DigatModel::TopicTable(corpus.train_news);
  const std::size_t h = config.model.history_len;
  if (!config.train_behaviors.empty()) {
    corpus.train_impressions =
        ParseBehaviorsFile(config.Resolve(config.train_behaviors), h);
  }
  if (with_eval && !config.eval_news.empty()) {
    for (const NewsRecord& r : ReadNewsFile(config.Resolve(config.eval_news))) {
      NewsItem item = MakeNewsItem(r, corpus.vocab, t);
      if (corpus.news.Add(item)) corpus.eval_only_news.push_back(std::move(item));
    }
  }
  if (with_eval && !config.eval_behaviors.empty()) {
    corpus.eval_impressions =
        ParseBehaviorsFile(config.Resolve(config.eval_behaviors), h);
  }
  ValidateReferences(corpus.train_impressions, corpus.news);
  ValidateReferences(corpus.eval_impressions, corpus.news);
  return corpus;
}

std::unique_ptr<SimilarityProvider> MakeProvider(const RunConfig& config,
                                                 const Corpus& corpus) {
  if (config.provider == ProviderKind::kTfidf) {
    return std::make_unique<TfidfProvider>(
        BuildTfidfVectors(corpus.train_news, corpus.eval_only_news));
  }
  if (config.news_vectors.empty()) {
    throw ConfigError("provider 'embedding' needs news_vectors");
  }
  const auto path = config.Resolve(config.news_vectors);
  if (!std::filesystem::exists(path)) {
    throw ConfigError("news vector store " + path.string() + " does not exist");
  }
  return std::make_unique<EmbeddingProvider>(
      LoadEmbeddingStore(path, corpus.TrainIds()));
}

namespace {

std::uint64_t HashFile(const std::filesystem::path& path, std::uint64_t h) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return Fnv1a(buf.str(), h);
}

}  // namespace

std::uint64_t SagConfigHash(const RunConfig& config) {
  std::ostringstream key;
  key << ProviderTag(config.provider) << '|' << config.model.m << '|'
      << config.model.k << '|' << config.model.title_len << '|';
  std::uint64_t h = Fnv1a(key.str());
  h = HashFile(config.Resolve(config.train_news), h);
  if (!config.eval_news.empty()) {
    h = HashFile(config.Resolve(config.eval_news), h);
  }
  if (config.provider == ProviderKind::kEmbedding &&
      !config.news_vectors.empty()) {
    h = HashFile(config.Resolve(config.news_vectors), h);
  }
  return h;
}

SagCache BuildSagCache(const std::vector<std::string>& candidates,
                       const SimilarityProvider& provider, int m, int k,
                       std::uint64_t config_hash, SagBuildStats* stats) {
  const auto start = std::chrono::steady_clock::now();
  SagCache cache;
  cache.config_hash = config_hash;
  RetrievalCache retrieval(provider, static_cast<std::size_t>(m));
  cache.graphs.reserve(candidates.size());
  for (const std::string& id : candidates) {
    cache.graphs.push_back(BuildSag(id, provider, m, k, &retrieval));
  }
  if (stats) {
    for (const SemanticAugmentedGraph& g : cache.graphs) {
      ++stats->node_histogram[g.num_nodes()];
      stats->max_nodes = std::max(stats->max_nodes, g.num_nodes());
      for (int hop : g.hops) {
        stats->max_hop = std::max(stats->max_hop, static_cast<std::size_t>(hop));
      }
    }
    stats->seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  return cache;
}

std::unique_ptr<CandidateGraphSource> MakeGraphSource(
    const RunConfig& config, const Corpus& corpus,
    const SimilarityProvider* provider, const SagCache* cache) {
  auto source = std::make_unique<CandidateGraphSource>(
      config.model.sa_mode, corpus.news, config.model.m, config.model.k);
  source->set_provider(provider);
  if (config.model.sa_mode == SaMode::kGraph && cache) {
    const std::uint64_t expected = SagConfigHash(config);
    if (cache->config_hash != expected) {
      throw ConfigError("SAG cache hash mismatch: cache has " +
                        std::to_string(cache->config_hash) +
                        ", config expects " + std::to_string(expected) +
                        "; rerun build-sag");
    }
    for (const SemanticAugmentedGraph& g : cache->graphs) {
      if (g.m != config.model.m || g.k != config.model.k ||
          g.provider_tag != ProviderTag(config.provider)) {
        throw ConfigError("SAG cache graph for " + g.root() +
                          " was built with different M, K or provider");
      }
      source->AddGraph(g);
    }
  }
  return source;
}

std::unique_ptr<DigatModel> MakeModel(const RunConfig& config,
                                      const Corpus& corpus) {
  Rng rng(DeriveSeed(config.train.seed, 1));
  Tensor words = config.embeddings.empty()
                     ? InitWordEmbeddings(corpus.vocab, rng)
                     : LoadWordEmbeddings(config.Resolve(config.embeddings),
                                          corpus.vocab, rng);
  return std::make_unique<DigatModel>(config.model, corpus.topics,
                                      std::move(words), config.train.seed);
}

}  // namespace digat
