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

#ifndef DIGAT_INTERACTION_H_
#define DIGAT_INTERACTION_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "digat/forward_options.h"
#include "digat/graph_context.h"
#include "digat/params.h"
#include "digat/random.h"
#include "digat/tensor.h"

namespace digat {

enum class IsolatedNodePolicy { kError, kSelfLoop };

// Directed message list: node targets[e] attends to node sources[e]. Edges
// are grouped by target.
struct GraphEdges {
  std::size_t num_nodes = 0;
  std::vector<std::size_t> targets;
  std::vector<std::size_t> sources;

  std::size_t size() const { return targets.size(); }

  // Self loops are never added except for isolated nodes under kSelfLoop.
  // `target_order`, when given, is a permutation fixing the order in which
  // target groups are emitted.
  static GraphEdges FromAdjacency(const std::vector<std::vector<int>>& adj,
                                  IsolatedNodePolicy policy,
                                  std::span<const std::size_t> target_order = {});
};

struct InteractionConfig {
  std::size_t layers = 3;
  bool interact_news = true;
  bool interact_user = true;
};

// One graph update: h' = ReLU(sum_j alpha_ij (h_j W + b)) + h_i, with
// alpha the neighbor softmax of LeakyReLU(a . K_ij). K_ij is a two-layer
// network of [context; h_i; h_j], or of [h_i; h_j] without interaction.
class GraphUpdateLayer {
 public:
  // Parameters are registered as `prefix` + {w, b, key.w1, key.b1, key.w2,
  // key.b2, att}.
  GraphUpdateLayer(const std::string& prefix, std::size_t d, bool interact,
                   ParamStore& params, Rng& rng);

  // `context` is ignored (and may be undefined) when interact() is false.
  Tensor Forward(const Tensor& h, const Tensor& context,
                 const GraphEdges& edges, AttentionLog* log = nullptr,
                 std::string_view site = "gat") const;

  bool interact() const { return interact_; }

 private:
  std::size_t d_;
  bool interact_;
  Tensor w_, b_, key_w1_, key_b1_, key_w2_, key_b2_, att_;
};

struct DualOutput {
  Tensor news_repr;  // r_n
  Tensor user_repr;  // r_u
  // Node embeddings and contexts after each layer, index 0 = input.
  std::vector<Tensor> news_states;
  std::vector<Tensor> user_states;
  std::vector<Tensor> news_contexts;
  std::vector<Tensor> user_contexts;
};

struct UserGraphInput {
  // Rows: history news first, then topic nodes.
  Tensor nodes;
  const GraphEdges* edges = nullptr;
  // Topic groups over the leading news rows.
  std::span<const std::vector<std::size_t>> groups;
  std::size_t num_news = 0;
};

class DualInteraction {
 public:
  // Owns per-layer update parameters "interaction.{news,user}.l<i>.*"; the
  // news context extractor is shared.
  DualInteraction(const InteractionConfig& config, std::size_t d,
                  const NewsContextExtractor& news_context, ParamStore& params,
                  Rng& rng);

  // news_edges == nullptr keeps the news rows fixed across layers, so the
  // news context is extracted once (sequence and no-augmentation modes).
  DualOutput Run(const Tensor& news_nodes, const GraphEdges* news_edges,
                 const UserGraphInput& user, AttentionLog* log = nullptr) const;

  const InteractionConfig& config() const { return config_; }
  const GraphUpdateLayer& news_layer(std::size_t l) const {
    return news_layers_.at(l);
  }
  const GraphUpdateLayer& user_layer(std::size_t l) const {
    return user_layers_.at(l);
  }

 private:
  Tensor UserContext(const Tensor& user_nodes, const UserGraphInput& user,
                     const Tensor& news_context, AttentionLog* log) const;

  InteractionConfig config_;
  std::size_t d_;
  const NewsContextExtractor& news_context_;
  std::vector<GraphUpdateLayer> news_layers_;
  std::vector<GraphUpdateLayer> user_layers_;
};

}  // namespace digat

#endif  // DIGAT_INTERACTION_H_
