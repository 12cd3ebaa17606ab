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

#include "digat/interaction.h"

#include <numeric>

#include "digat/errors.h"
#include "digat/ops.h"

namespace digat {

GraphEdges GraphEdges::FromAdjacency(const std::vector<std::vector<int>>& adj,
                                     IsolatedNodePolicy policy,
                                     std::span<const std::size_t> target_order) {
  GraphEdges edges;
  edges.num_nodes = adj.size();
  std::vector<std::size_t> order(adj.size());
  if (target_order.empty()) {
    std::iota(order.begin(), order.end(), 0);
  } else {
    if (target_order.size() != adj.size()) {
      throw ContractError("node order does not cover the graph");
    }
    order.assign(target_order.begin(), target_order.end());
  }
  for (std::size_t i : order) {
    bool any = false;
    for (int j : adj.at(i)) {
      if (j < 0 || static_cast<std::size_t>(j) >= adj.size()) {
        throw ContractError("adjacency references missing node " +
                            std::to_string(j));
      }
      if (static_cast<std::size_t>(j) == i) continue;
      edges.targets.push_back(i);
      edges.sources.push_back(static_cast<std::size_t>(j));
      any = true;
    }
    if (!any) {
      if (policy == IsolatedNodePolicy::kError) {
        throw ContractError("graph node " + std::to_string(i) +
                            " has no neighbors");
      }
      edges.targets.push_back(i);
      edges.sources.push_back(i);
    }
  }
  return edges;
}

GraphUpdateLayer::GraphUpdateLayer(const std::string& prefix, std::size_t d,
                                   bool interact, ParamStore& params, Rng& rng)
    : d_(d), interact_(interact) {
  const std::size_t in = (interact ? 3 : 2) * d;
  w_ = params.Add(prefix + "w", GlorotUniform(d, d, rng));
  b_ = params.Add(prefix + "b", Tensor::Zeros({d}));
  key_w1_ = params.Add(prefix + "key.w1", GlorotUniform(in, d, rng));
  key_b1_ = params.Add(prefix + "key.b1", Tensor::Zeros({d}));
  key_w2_ = params.Add(prefix + "key.w2", GlorotUniform(d, d, rng));
  key_b2_ = params.Add(prefix + "key.b2", Tensor::Zeros({d}));
  att_ = params.Add(prefix + "att", UniformTensor({d}, -0.1, 0.1, rng));
}

Tensor GraphUpdateLayer::Forward(const Tensor& h, const Tensor& context,
                                 const GraphEdges& edges, AttentionLog* log,
                                 std::string_view site) const {
  if (h.rank() != 2 || h.cols() != d_ || h.rows() != edges.num_nodes) {
    throw ContractError("graph update: node matrix " +
                        ShapeToString(h.shape()) + " does not match " +
                        std::to_string(edges.num_nodes) + " nodes of width " +
                        std::to_string(d_));
  }
  const std::size_t n = h.rows(), d = d_;
  Tensor values = AddBias(MatMul(h, w_), b_);

  // The first key layer acts on a concatenation, so it splits into one
  // block per part; each block is applied per node and gathered per edge.
  auto block = [this, d](std::size_t index) {
    std::vector<std::size_t> rows(d);
    std::iota(rows.begin(), rows.end(), index * d);
    return Gather(key_w1_, rows);
  };
  const std::size_t first = interact_ ? 1 : 0;
  Tensor bias = key_b1_;
  if (interact_) {
    if (context.size() != d) {
      throw ContractError("graph update: context of size " +
                          std::to_string(context.size()) + ", expected " +
                          std::to_string(d));
    }
    bias = Add(Reshape(MatMul(Reshape(context, {1, d}), block(0)), {d}), bias);
  }
  Tensor self_part = MatMul(h, block(first));
  Tensor neighbor_part = MatMul(h, block(first + 1));
  Tensor hidden = Relu(AddBias(Add(Gather(self_part, edges.targets),
                                   Gather(neighbor_part, edges.sources)),
                               bias));
  // a . (z W2 + b2) == z (W2 a) + b2 . a
  Tensor projected_att = MatMul(key_w2_, Reshape(att_, {d, 1}));
  const std::size_t e = edges.size();
  Tensor logits = Reshape(
      AddBias(MatMul(hidden, projected_att), Reshape(Dot(key_b2_, att_), {1})),
      {e});
  Tensor alpha = SegmentSoftmax(LeakyRelu(logits), edges.targets, n);
  if (log) {
    auto w = alpha.data();
    std::size_t begin = 0;
    for (std::size_t k = 1; k <= e; ++k) {
      if (k == e || edges.targets[k] != edges.targets[begin]) {
        log->Record(std::string(site), w.subspan(begin, k - begin));
        begin = k;
      }
    }
  }
  Tensor aggregated =
      SegmentWeightedSum(alpha, values, edges.targets, edges.sources, n);
  return Add(Relu(aggregated), h);
}

DualInteraction::DualInteraction(const InteractionConfig& config,
                                 std::size_t d,
                                 const NewsContextExtractor& news_context,
                                 ParamStore& params, Rng& rng)
    : config_(config), d_(d), news_context_(news_context) {
  if (config.layers < 1) throw ConfigError("interaction needs L >= 1");
  news_layers_.reserve(config.layers);
  user_layers_.reserve(config.layers);
  for (std::size_t l = 0; l < config.layers; ++l) {
    const std::string suffix = ".l" + std::to_string(l) + ".";
    news_layers_.emplace_back("interaction.news" + suffix, d,
                              config.interact_news, params, rng);
    user_layers_.emplace_back("interaction.user" + suffix, d,
                              config.interact_user, params, rng);
  }
}

Tensor DualInteraction::UserContext(const Tensor& user_nodes,
                                    const UserGraphInput& user,
                                    const Tensor& news_context,
                                    AttentionLog* log) const {
  std::vector<std::size_t> news_rows(user.num_news);
  std::iota(news_rows.begin(), news_rows.end(), 0);
  return UserGraphContext(Gather(user_nodes, news_rows), user.groups,
                          news_context, log);
}

DualOutput DualInteraction::Run(const Tensor& news_nodes,
                                const GraphEdges* news_edges,
                                const UserGraphInput& user,
                                AttentionLog* log) const {
  if (!user.edges) throw ContractError("user graph edges are required");
  if (user.num_news == 0 || user.num_news > user.nodes.rows()) {
    throw ContractError("user graph has no history rows");
  }
  DualOutput out;
  Tensor hn = news_nodes, hu = user.nodes;
  Tensor cn = news_context_(hn, log);
  Tensor cu = UserContext(hu, user, cn, log);
  out.news_states.push_back(hn);
  out.user_states.push_back(hu);
  out.news_contexts.push_back(cn);
  out.user_contexts.push_back(cu);
  for (std::size_t l = 0; l < config_.layers; ++l) {
    Tensor next_hn = hn;
    if (news_edges) {
      next_hn = news_layers_[l].Forward(hn, cu, *news_edges, log, "news_gat");
    }
    Tensor next_hu =
        user_layers_[l].Forward(hu, cn, *user.edges, log, "user_gat");
    hn = next_hn;
    hu = next_hu;
    if (news_edges) cn = news_context_(hn, log);
    cu = UserContext(hu, user, cn, log);
    out.news_states.push_back(hn);
    out.user_states.push_back(hu);
    out.news_contexts.push_back(cn);
    out.user_contexts.push_back(cu);
  }
  out.news_repr = cn;
  out.user_repr = cu;
  return out;
}

}  // namespace digat
