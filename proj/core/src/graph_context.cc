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

#include "digat/graph_context.h"

#include <cmath>
#include <string>

#include "digat/errors.h"
#include "digat/ops.h"

namespace digat {

namespace {

void RequireWidth(const char* what, const Tensor& t, std::size_t d) {
  if (t.cols() != d) {
    throw ContractError(std::string(what) + ": expected width " +
                        std::to_string(d) + ", got " +
                        ShapeToString(t.shape()));
  }
}

}  // namespace

Tensor ScaledDotAttention(const Tensor& query, const Tensor& keys,
                          AttentionLog* log, std::string_view site) {
  if (query.rank() != 1 || keys.rank() != 2 || keys.cols() != query.size()) {
    throw ShapeError("attention: query " + ShapeToString(query.shape()) +
                     " does not match keys " + ShapeToString(keys.shape()));
  }
  const std::size_t n = keys.rows(), d = keys.cols();
  if (n == 0) throw ContractError("attention over an empty key set");
  Tensor q = Reshape(query, {d, 1});
  Tensor scores = DivScalar(Reshape(MatMul(keys, q), {1, n}),
                            std::sqrt(static_cast<double>(d)));
  Tensor alpha = Softmax(scores);
  if (log) log->Record(std::string(site), alpha.data());
  return Reshape(MatMul(alpha, keys), {d});
}

NewsContextExtractor::NewsContextExtractor(std::size_t d, ParamStore& params,
                                           Rng& rng)
    : d_(d) {
  wq_ = params.Add("news_ctx.wq", GlorotUniform(d, d, rng));
  wk_ = params.Add("news_ctx.wk", GlorotUniform(d, d, rng));
  gate_w_ = params.Add("news_ctx.gate.w", GlorotUniform(2 * d, d, rng));
  gate_b_ = params.Add("news_ctx.gate.b", Tensor::Zeros({d}));
}

NewsContextExtractor::Parts NewsContextExtractor::Extract(
    const Tensor& nodes, AttentionLog* log) const {
  if (nodes.rank() != 2 || nodes.rows() == 0) {
    throw ContractError("news context needs at least the root row, got " +
                        ShapeToString(nodes.shape()));
  }
  RequireWidth("news context", nodes, d_);
  Parts parts;
  parts.local = Row(nodes, 0);
  const std::size_t n = nodes.rows() - 1;
  if (n == 0) {
    parts.context = parts.local;
    return parts;
  }
  std::vector<std::size_t> others(n);
  for (std::size_t i = 0; i < n; ++i) others[i] = i + 1;
  Tensor rest = Gather(nodes, others);
  Tensor q = MatMul(Reshape(parts.local, {1, d_}), wq_);
  Tensor k = MatMul(rest, wk_);
  Tensor scores = DivScalar(Reshape(MatMul(k, Transpose(q)), {1, n}),
                            std::sqrt(static_cast<double>(d_)));
  Tensor alpha = Softmax(scores);
  if (log) log->Record("news_ctx", alpha.data());
  parts.global = Reshape(MatMul(alpha, rest), {d_});
  Tensor joint = Reshape(Concat({parts.local, parts.global}), {1, 2 * d_});
  parts.gate = Sigmoid(AddBias(Reshape(MatMul(joint, gate_w_), {d_}), gate_b_));
  parts.context = Add(Mul(parts.gate, parts.local),
                      Mul(OneMinus(parts.gate), parts.global));
  return parts;
}

Tensor UserGraphContext(const Tensor& news,
                        std::span<const std::vector<std::size_t>> groups,
                        const Tensor& news_context, AttentionLog* log) {
  if (news.rank() != 2) {
    throw ShapeError("user context: news rows must be a matrix, got " +
                     ShapeToString(news.shape()));
  }
  RequireWidth("user context", news, news_context.size());
  if (groups.empty()) throw ContractError("user context needs a topic group");
  std::vector<Tensor> topics;
  topics.reserve(groups.size());
  for (const auto& group : groups) {
    if (group.empty()) throw ContractError("user context: empty topic group");
    topics.push_back(ScaledDotAttention(news_context, Gather(news, group), log,
                                        "user_ctx.topic"));
  }
  return ScaledDotAttention(news_context, ConcatRows(topics), log,
                            "user_ctx.user");
}

}  // namespace digat
