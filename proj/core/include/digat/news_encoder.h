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

#ifndef DIGAT_NEWS_ENCODER_H_
#define DIGAT_NEWS_ENCODER_H_

#include <cstddef>
#include <span>

#include "digat/forward_options.h"
#include "digat/mind.h"
#include "digat/params.h"
#include "digat/random.h"
#include "digat/tensor.h"

namespace digat {

struct NewsEncoderConfig {
  std::size_t d = 400;
  std::size_t heads = 8;
  std::size_t att_hidden = 200;
  double dropout = 0.2;
};

// Title encoder: word embeddings, multi-head self-attention over the tokens,
// then attentive pooling of ReLU(H) with a tanh feed-forward scorer.
class NewsEncoder {
 public:
  // Registers its weights in `params`. `word_embeddings` is |V| x word_dim
  // and becomes the trainable "word_embedding" parameter.
  NewsEncoder(const NewsEncoderConfig& config, Tensor word_embeddings,
              ParamStore& params, Rng& rng);

  // Output shape (d). Pad positions are masked from both attentions; an
  // all-pad title keeps position 0 so the softmaxes stay defined.
  Tensor Encode(const NewsItem& item, const ForwardOptions& options = {}) const;
  // Row i equals Encode(*items[i]).
  Tensor EncodeBatch(std::span<const NewsItem* const> items,
                     const ForwardOptions& options = {}) const;

  const NewsEncoderConfig& config() const { return config_; }
  std::size_t word_dim() const { return word_embedding_.cols(); }
  std::size_t vocab_size() const { return word_embedding_.rows(); }

 private:
  NewsEncoderConfig config_;
  Tensor word_embedding_;
  Tensor wq_, wk_, wv_, wo_;
  Tensor att_w1_, att_b1_, att_w2_;
};

}  // namespace digat

#endif  // DIGAT_NEWS_ENCODER_H_
