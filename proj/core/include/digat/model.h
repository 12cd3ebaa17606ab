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

#ifndef DIGAT_MODEL_H_
#define DIGAT_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "digat/forward_options.h"
#include "digat/graph_context.h"
#include "digat/interaction.h"
#include "digat/mind.h"
#include "digat/news_encoder.h"
#include "digat/params.h"
#include "digat/sag.h"
#include "digat/similarity.h"
#include "digat/tensor.h"

namespace digat {

// Semantic augmentation of the candidate: a SAG, a flat retrieval list, or
// the candidate alone.
enum class SaMode { kGraph, kSeq, kNone };

std::string_view SaModeName(SaMode mode);
// ConfigError for anything but "graph", "seq" or "none".
SaMode ParseSaMode(std::string_view name);

struct ModelConfig {
  std::size_t d = 400;
  std::size_t word_dim = 300;
  std::size_t title_len = 32;
  std::size_t history_len = 50;
  std::size_t heads = 8;
  std::size_t att_hidden = 200;
  int m = 5;
  int k = 2;
  std::size_t layers = 3;
  SaMode sa_mode = SaMode::kGraph;
  bool interact_news = true;
  bool interact_user = true;
  double dropout = 0.2;
};

// The news side of one candidate: nodes (root first) and, when propagating,
// their adjacency.
struct CandidateGraph {
  std::vector<const NewsItem*> nodes;
  std::vector<std::vector<int>> adjacency;
  bool propagate = true;
};

// Resolves candidates to CandidateGraphs under one SA mode. Graph mode reads
// stored SAGs and, if a provider is attached, builds missing ones on demand.
// Sequence mode needs a provider and takes the top M*K retrievals.
class CandidateGraphSource {
 public:
  CandidateGraphSource(SaMode mode, const NewsStore& news, int m, int k);

  void set_provider(const SimilarityProvider* provider);
  void AddGraph(SemanticAugmentedGraph graph);
  SaMode mode() const { return mode_; }

  // LookupError when the candidate or one of its nodes is unknown.
  CandidateGraph Get(const std::string& news_id) const;

 private:
  SaMode mode_;
  const NewsStore& news_;
  int m_, k_;
  const SimilarityProvider* provider_ = nullptr;
  mutable std::unique_ptr<RetrievalCache> retrieval_;
  mutable std::unordered_map<std::string, SemanticAugmentedGraph> graphs_;
  mutable std::unordered_map<std::string, std::vector<std::string>> lists_;
};

// r_n . r_u; ContractError on a size mismatch.
Tensor ClickScore(const Tensor& news_repr, const Tensor& user_repr);

class DigatModel {
 public:
  // `topics` lists every topic with its own embedding row; the placeholder
  // and unknown topics are appended when missing. `word_embeddings` is
  // |V| x word_dim.
  DigatModel(const ModelConfig& config, std::vector<std::string> topics,
             Tensor word_embeddings, std::uint64_t seed);
  DigatModel(const DigatModel&) = delete;
  DigatModel& operator=(const DigatModel&) = delete;

  // Training topics in order of first appearance plus the reserved ones.
  static std::vector<std::string> TopicTable(std::span<const NewsItem> news);

  // Scores of one user's history against each candidate, shape (m).
  Tensor ScoreCandidates(std::span<const NewsItem* const> history,
                         std::span<const CandidateGraph> candidates,
                         const ForwardOptions& options = {}) const;

  // Full forward for one (history, candidate) pair, exposing every layer.
  DualOutput Represent(std::span<const NewsItem* const> history,
                       const CandidateGraph& candidate,
                       const ForwardOptions& options = {}) const;

  std::size_t TopicIndex(std::string_view topic) const;
  const std::vector<std::string>& topics() const { return topics_; }

  ParamStore& params() { return params_; }
  const ParamStore& params() const { return params_; }
  const ModelConfig& config() const { return config_; }
  const NewsEncoder& encoder() const { return *encoder_; }
  const NewsContextExtractor& news_context() const { return *news_context_; }
  const DualInteraction& interaction() const { return *interaction_; }

 private:
  struct Prepared;
  Prepared Prepare(std::span<const NewsItem* const> history,
                   std::span<const CandidateGraph> candidates,
                   const ForwardOptions& options) const;
  DualOutput RunCandidate(const Prepared& prepared,
                          const CandidateGraph& candidate,
                          const ForwardOptions& options) const;

  ModelConfig config_;
  std::vector<std::string> topics_;
  std::unordered_map<std::string, std::size_t> topic_index_;
  ParamStore params_;
  std::unique_ptr<NewsEncoder> encoder_;
  Tensor topic_embedding_;
  std::unique_ptr<NewsContextExtractor> news_context_;
  std::unique_ptr<DualInteraction> interaction_;
};

}  // namespace digat

#endif  // DIGAT_MODEL_H_
