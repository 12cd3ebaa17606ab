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

#ifndef DIGAT_GRAPH_CONTEXT_H_
#define DIGAT_GRAPH_CONTEXT_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "digat/forward_options.h"
#include "digat/params.h"
#include "digat/random.h"
#include "digat/tensor.h"

namespace digat {

// Single-query scaled dot-product attention with the keys doubling as
// values: softmax(K q / sqrt(d)) K, for keys n x d and query (d). The log
// entry is labelled `site`.
Tensor ScaledDotAttention(const Tensor& query, const Tensor& keys,
                          AttentionLog* log = nullptr,
                          std::string_view site = "attention");

// News graph context extractor. Parameters are created once and shared by
// every interaction layer.
class NewsContextExtractor {
 public:
  // Registers "news_ctx.wq", "news_ctx.wk" (d x d) and the gate
  // "news_ctx.gate.w" (2d x d), "news_ctx.gate.b" (d).
  NewsContextExtractor(std::size_t d, ParamStore& params, Rng& rng);

  struct Parts {
    Tensor local;
    Tensor global;  // undefined when there are no non-root rows
    Tensor gate;    // undefined when there are no non-root rows
    Tensor context;
  };

  // nodes is (N+1) x d with the root in row 0. With N == 0 the context is
  // the root row itself.
  Parts Extract(const Tensor& nodes, AttentionLog* log = nullptr) const;
  Tensor operator()(const Tensor& nodes, AttentionLog* log = nullptr) const {
    return Extract(nodes, log).context;
  }

  std::size_t d() const { return d_; }

 private:
  std::size_t d_;
  Tensor wq_, wk_, gate_w_, gate_b_;
};

// Hierarchical user context: per topic group, attention from c_n over that
// group's news rows; then attention from c_n over the topic summaries.
// `groups` indexes rows of `news` and must hold no empty group.
Tensor UserGraphContext(const Tensor& news,
                        std::span<const std::vector<std::size_t>> groups,
                        const Tensor& news_context, AttentionLog* log = nullptr);

}  // namespace digat

#endif  // DIGAT_GRAPH_CONTEXT_H_
