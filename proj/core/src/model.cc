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

#include "digat/model.h"

#include <algorithm>

#include "digat/errors.h"
#include "digat/ops.h"
#include "digat/random.h"
#include "digat/user_graph.h"

namespace digat {

std::string_view SaModeName(SaMode mode) {
  switch (mode) {
    case SaMode::kGraph: return "graph";
    case SaMode::kSeq: return "seq";
    case SaMode::kNone: return "none";
  }
  return "graph";
}

SaMode ParseSaMode(std::string_view name) {
  if (name == "graph") return SaMode::kGraph;
  if (name == "seq") return SaMode::kSeq;
  if (name == "none") return SaMode::kNone;
  throw ConfigError("sa_mode must be graph, seq or none, got '" +
                    std::string(name) + "'");
}

CandidateGraphSource::CandidateGraphSource(SaMode mode, const NewsStore& news,
                                           int m, int k)
    : mode_(mode), news_(news), m_(m), k_(k) {}

void CandidateGraphSource::set_provider(const SimilarityProvider* provider) {
  provider_ = provider;
  retrieval_.reset();
  if (provider_) {
    retrieval_ = std::make_unique<RetrievalCache>(*provider_,
                                                  static_cast<std::size_t>(m_));
  }
}

void CandidateGraphSource::AddGraph(SemanticAugmentedGraph graph) {
  std::string root = graph.root();
  graphs_.insert_or_assign(std::move(root), std::move(graph));
}

CandidateGraph CandidateGraphSource::Get(const std::string& news_id) const {
  CandidateGraph out;
  out.nodes.push_back(&news_.Get(news_id));
  switch (mode_) {
    case SaMode::kNone:
      out.propagate = false;
      return out;
    case SaMode::kSeq: {
      out.propagate = false;
      auto it = lists_.find(news_id);
      if (it == lists_.end()) {
        if (!provider_) {
          throw ConfigError("sequence augmentation needs a similarity provider");
        }
        std::vector<std::string> ids;
        if (m_ > 0 && k_ > 0) {
          for (const ScoredNews& s : provider_->RetrieveTopM(
                   news_id, static_cast<std::size_t>(m_ * k_))) {
            ids.push_back(s.news_id);
          }
        }
        it = lists_.emplace(news_id, std::move(ids)).first;
      }
      for (const std::string& id : it->second) out.nodes.push_back(&news_.Get(id));
      return out;
    }
    case SaMode::kGraph: {
      auto it = graphs_.find(news_id);
      if (it == graphs_.end()) {
        if (!provider_) {
          throw LookupError("no semantic-augmented graph for news " + news_id);
        }
        it = graphs_.emplace(news_id, BuildSag(news_id, *provider_, m_, k_,
                                               retrieval_.get()))
                 .first;
      }
      const SemanticAugmentedGraph& g = it->second;
      for (std::size_t i = 1; i < g.nodes.size(); ++i) {
        out.nodes.push_back(&news_.Get(g.nodes[i]));
      }
      out.adjacency = g.Adjacency();
      return out;
    }
  }
  return out;
}

Tensor ClickScore(const Tensor& news_repr, const Tensor& user_repr) {
  if (news_repr.rank() != 1 || user_repr.rank() != 1 ||
      news_repr.size() != user_repr.size()) {
    throw ContractError("click score: representations " +
                        ShapeToString(news_repr.shape()) + " and " +
                        ShapeToString(user_repr.shape()) + " differ");
  }
  return Dot(news_repr, user_repr);
}

DigatModel::DigatModel(const ModelConfig& config,
                       std::vector<std::string> topics, Tensor word_embeddings,
                       std::uint64_t seed)
    : config_(config), topics_(std::move(topics)) {
  if (word_embeddings.rank() != 2 || word_embeddings.cols() != config.word_dim) {
    throw ConfigError("word embeddings " +
                      ShapeToString(word_embeddings.shape()) +
                      " do not match word_dim " +
                      std::to_string(config.word_dim));
  }
  for (std::string_view reserved : {kPlaceholderTopic, kUnknownTopic}) {
    if (std::find(topics_.begin(), topics_.end(), reserved) == topics_.end()) {
      topics_.emplace_back(reserved);
    }
  }
  for (std::size_t i = 0; i < topics_.size(); ++i) {
    if (!topic_index_.emplace(topics_[i], i).second) {
      throw ConfigError("duplicate topic '" + topics_[i] + "'");
    }
  }
  Rng rng(DeriveSeed(seed, 0x6d6f64656cULL));
  NewsEncoderConfig enc;
  enc.d = config.d;
  enc.heads = config.heads;
  enc.att_hidden = config.att_hidden;
  enc.dropout = config.dropout;
  encoder_ = std::make_unique<NewsEncoder>(enc, std::move(word_embeddings),
                                           params_, rng);
  topic_embedding_ = params_.Add(
      "topic_embedding", UniformTensor({topics_.size(), config.d}, -0.1, 0.1, rng));
  news_context_ = std::make_unique<NewsContextExtractor>(config.d, params_, rng);
  InteractionConfig ic;
  ic.layers = config.layers;
  ic.interact_news = config.interact_news;
  ic.interact_user = config.interact_user;
  interaction_ = std::make_unique<DualInteraction>(ic, config.d, *news_context_,
                                                   params_, rng);
}

std::vector<std::string> DigatModel::TopicTable(std::span<const NewsItem> news) {
  std::vector<std::string> topics;
  for (const NewsItem& item : news) {
    if (std::find(topics.begin(), topics.end(), item.topic) == topics.end()) {
      topics.push_back(item.topic);
    }
  }
  for (std::string_view reserved : {kPlaceholderTopic, kUnknownTopic}) {
    if (std::find(topics.begin(), topics.end(), reserved) == topics.end()) {
      topics.emplace_back(reserved);
    }
  }
  return topics;
}

std::size_t DigatModel::TopicIndex(std::string_view topic) const {
  auto it = topic_index_.find(std::string(topic));
  if (it == topic_index_.end()) it = topic_index_.find(std::string(kUnknownTopic));
  return it->second;
}

struct DigatModel::Prepared {
  Tensor encoded;
  std::unordered_map<const NewsItem*, std::size_t> rows;
  Tensor user_nodes;
  GraphEdges user_edges;
  std::vector<std::vector<std::size_t>> groups;
  std::size_t num_news = 0;
};

DigatModel::Prepared DigatModel::Prepare(
    std::span<const NewsItem* const> history,
    std::span<const CandidateGraph> candidates,
    const ForwardOptions& options) const {
  if (history.empty()) throw ContractError("user history is empty");
  Prepared p;
  std::vector<const NewsItem*> items;
  auto add = [&](const NewsItem* item) {
    if (p.rows.emplace(item, items.size()).second) items.push_back(item);
  };
  for (const NewsItem* item : history) add(item);
  for (const CandidateGraph& c : candidates) {
    if (c.nodes.empty()) throw ContractError("candidate graph has no root");
    for (const NewsItem* item : c.nodes) add(item);
  }
  p.encoded = encoder_->EncodeBatch(items, options);

  UserGraph ug = BuildUserGraph(history);
  std::vector<std::size_t> history_rows, topic_rows;
  for (const NewsItem* item : history) history_rows.push_back(p.rows.at(item));
  for (const std::string& t : ug.topics) topic_rows.push_back(TopicIndex(t));
  p.user_nodes = ConcatRows({Gather(p.encoded, history_rows),
                             Gather(topic_embedding_, topic_rows)});
  p.user_edges =
      GraphEdges::FromAdjacency(ug.Adjacency(), IsolatedNodePolicy::kSelfLoop);
  p.groups = ug.TopicGroups();
  p.num_news = ug.num_news();
  return p;
}

DualOutput DigatModel::RunCandidate(const Prepared& p,
                                    const CandidateGraph& candidate,
                                    const ForwardOptions& options) const {
  std::vector<std::size_t> node_rows;
  node_rows.reserve(candidate.nodes.size());
  for (const NewsItem* item : candidate.nodes) node_rows.push_back(p.rows.at(item));
  Tensor news_nodes = Gather(p.encoded, node_rows);
  GraphEdges news_edges;
  if (candidate.propagate) {
    if (candidate.adjacency.size() != candidate.nodes.size()) {
      throw ContractError("candidate adjacency does not match its nodes");
    }
    // A lone root attends to itself; elsewhere an isolated node is a bug.
    news_edges = GraphEdges::FromAdjacency(
        candidate.adjacency, candidate.nodes.size() == 1
                                 ? IsolatedNodePolicy::kSelfLoop
                                 : IsolatedNodePolicy::kError);
  }
  UserGraphInput user;
  user.nodes = p.user_nodes;
  user.edges = &p.user_edges;
  user.groups = p.groups;
  user.num_news = p.num_news;
  return interaction_->Run(news_nodes,
                           candidate.propagate ? &news_edges : nullptr, user,
                           options.log);
}

Tensor DigatModel::ScoreCandidates(std::span<const NewsItem* const> history,
                                   std::span<const CandidateGraph> candidates,
                                   const ForwardOptions& options) const {
  if (candidates.empty()) throw ContractError("no candidates to score");
  Prepared p = Prepare(history, candidates, options);
  std::vector<Tensor> scores;
  scores.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    DualOutput out = RunCandidate(p, candidates[i], options);
    scores.push_back(Reshape(ClickScore(out.news_repr, out.user_repr), {1}));
  }
  return Concat(scores);
}

DualOutput DigatModel::Represent(std::span<const NewsItem* const> history,
                                 const CandidateGraph& candidate,
                                 const ForwardOptions& options) const {
  Prepared p = Prepare(history, std::span(&candidate, 1), options);
  return RunCandidate(p, candidate, options);
}

}  // namespace digat
