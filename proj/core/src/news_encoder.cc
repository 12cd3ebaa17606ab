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

#include "digat/news_encoder.h"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "digat/errors.h"
#include "digat/ops.h"

namespace digat {

NewsEncoder::NewsEncoder(const NewsEncoderConfig& config,
                         Tensor word_embeddings, ParamStore& params, Rng& rng)
    : config_(config) {
  if (config.heads == 0 || config.d % config.heads != 0) {
    throw ConfigError("news encoder: d = " + std::to_string(config.d) +
                      " is not divisible by heads = " +
                      std::to_string(config.heads));
  }
  if (word_embeddings.rank() != 2 || word_embeddings.rows() < 2) {
    throw ShapeError("news encoder: word embedding table must be |V| x dim");
  }
  const std::size_t wd = word_embeddings.cols(), d = config.d;
  word_embedding_ = params.Add("word_embedding", std::move(word_embeddings));
  wq_ = params.Add("encoder.msa.wq", GlorotUniform(wd, d, rng));
  wk_ = params.Add("encoder.msa.wk", GlorotUniform(wd, d, rng));
  wv_ = params.Add("encoder.msa.wv", GlorotUniform(wd, d, rng));
  wo_ = params.Add("encoder.msa.wo", GlorotUniform(d, d, rng));
  att_w1_ = params.Add("encoder.att.w1",
                       GlorotUniform(d, config.att_hidden, rng));
  att_b1_ = params.Add("encoder.att.b1", Tensor::Zeros({config.att_hidden}));
  att_w2_ = params.Add("encoder.att.w2",
                       GlorotUniform(config.att_hidden, 1, rng));
}

Tensor NewsEncoder::Encode(const NewsItem& item,
                           const ForwardOptions& options) const {
  const std::size_t t = item.title_tokens.size();
  if (t == 0) throw ContractError("news " + item.news_id + " has no tokens");
  std::vector<std::size_t> ids(t);
  std::vector<std::uint8_t> keep(t);
  bool any = false;
  for (std::size_t i = 0; i < t; ++i) {
    const int id = item.title_tokens[i];
    if (id < 0 || static_cast<std::size_t>(id) >= vocab_size()) {
      throw LookupError("news " + item.news_id + ": token id " +
                        std::to_string(id) + " outside vocabulary of " +
                        std::to_string(vocab_size()));
    }
    ids[i] = static_cast<std::size_t>(id);
    keep[i] = id != kPadTokenId;
    any = any || keep[i];
  }
  if (!any) keep[0] = 1;

  const bool drop = options.dropout_rng && config_.dropout > 0.0;
  // All-pad titles read zeros, never the pad row.
  Tensor e = any ? Gather(word_embedding_, ids)
                 : Tensor::Zeros({t, word_embedding_.cols()});
  if (drop) e = Dropout(e, config_.dropout, *options.dropout_rng);

  const std::size_t d = config_.d, heads = config_.heads, dh = d / heads;
  Tensor q = MatMul(e, wq_);
  Tensor k = MatMul(e, wk_);
  Tensor v = MatMul(e, wv_);
  // Key mask replicated over query rows.
  std::vector<std::uint8_t> key_mask(t * t);
  for (std::size_t r = 0; r < t; ++r) {
    for (std::size_t c = 0; c < t; ++c) key_mask[r * t + c] = keep[c];
  }
  const double scale = std::sqrt(static_cast<double>(dh));
  std::vector<Tensor> head_out;
  head_out.reserve(heads);
  for (std::size_t h = 0; h < heads; ++h) {
    Tensor qh = SliceCols(q, h * dh, dh);
    Tensor kh = SliceCols(k, h * dh, dh);
    Tensor vh = SliceCols(v, h * dh, dh);
    Tensor a = Softmax(DivScalar(MatMul(qh, Transpose(kh)), scale), key_mask);
    if (options.log) {
      auto w = a.data();
      for (std::size_t r = 0; r < t; ++r) {
        options.log->Record("encoder.msa", w.subspan(r * t, t));
      }
    }
    head_out.push_back(MatMul(a, vh));
  }
  Tensor hn = MatMul(Concat(head_out), wo_);
  if (drop) hn = Dropout(hn, config_.dropout, *options.dropout_rng);

  Tensor r = Relu(hn);
  Tensor scores = MatMul(Tanh(AddBias(MatMul(r, att_w1_), att_b1_)), att_w2_);
  Tensor beta = Softmax(Reshape(scores, {1, t}), keep);
  if (options.log) options.log->Record("encoder.pool", beta.data());
  return Reshape(MatMul(beta, r), {d});
}

Tensor NewsEncoder::EncodeBatch(std::span<const NewsItem* const> items,
                                const ForwardOptions& options) const {
  if (items.empty()) throw ContractError("EncodeBatch needs at least one item");
  std::vector<Tensor> rows;
  rows.reserve(items.size());
  for (const NewsItem* item : items) {
    rows.push_back(Reshape(Encode(*item, options), {1, config_.d}));
  }
  return ConcatRows(rows);
}

}  // namespace digat
