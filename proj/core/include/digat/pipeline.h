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

#ifndef DIGAT_PIPELINE_H_
#define DIGAT_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "digat/mind.h"
#include "digat/model.h"
#include "digat/run_config.h"
#include "digat/sag.h"
#include "digat/similarity.h"

namespace digat {

// Parsed news and behaviors for one run. The store holds training news
// first; evaluation news only adds ids the training split lacks.
struct Corpus {
  Vocabulary vocab;
  NewsStore news{32};
  std::vector<NewsItem> train_news;
  // Evaluation news absent from the training split.
  std::vector<NewsItem> eval_only_news;
  std::vector<ImpressionRecord> train_impressions;
  std::vector<ImpressionRecord> eval_impressions;
  std::vector<std::string> topics;

  std::vector<std::string> TrainIds() const;
  // Distinct candidate ids, training impressions first.
  std::vector<std::string> CandidateIds(bool include_eval) const;
};

// Evaluation files are read when configured and `with_eval` is set.
Corpus LoadCorpus(const RunConfig& config, bool with_eval);

// The retrieval corpus is always the training news.
std::unique_ptr<SimilarityProvider> MakeProvider(const RunConfig& config,
                                                 const Corpus& corpus);

// Identifies a SAG cache: provider, M, K and the bytes of the news (and
// vector) files.
std::uint64_t SagConfigHash(const RunConfig& config);

struct SagBuildStats {
  std::map<std::size_t, std::size_t> node_histogram;
  std::size_t max_nodes = 0;
  std::size_t max_hop = 0;
  double seconds = 0.0;
};

SagCache BuildSagCache(const std::vector<std::string>& candidates,
                       const SimilarityProvider& provider, int m, int k,
                       std::uint64_t config_hash, SagBuildStats* stats = nullptr);

// Graph mode loads `sag_cache` and refuses a hash mismatch; missing graphs
// are then built from `provider` if one is passed.
std::unique_ptr<CandidateGraphSource> MakeGraphSource(
    const RunConfig& config, const Corpus& corpus,
    const SimilarityProvider* provider, const SagCache* cache);

// Word vectors come from `embeddings` when set, otherwise uniform init.
std::unique_ptr<DigatModel> MakeModel(const RunConfig& config,
                                      const Corpus& corpus);

}  // namespace digat

#endif  // DIGAT_PIPELINE_H_
