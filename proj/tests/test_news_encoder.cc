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

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "digat/errors.h"
#include "digat/mind.h"
#include "digat/news_encoder.h"
#include "digat/ops.h"
#include "digat/params.h"
#include "digat/random.h"
#include "support/test_support.h"

namespace digat {
namespace {

using testing::RandomTensor;

NewsItem Item(const std::string& id, std::vector<int> tokens, std::size_t len) {
  tokens.resize(len, kPadTokenId);
  return {id, "t", "", std::move(tokens)};
}

struct Fixture {
  explicit Fixture(NewsEncoderConfig c, std::size_t vocab = 12,
                   std::size_t word_dim = 6, std::uint64_t seed = 3)
      : rng(seed),
        encoder(c, RandomTensor({vocab, word_dim}, seed + 1, -0.5, 0.5, false),
                params, rng) {}
  ParamStore params;
  Rng rng;
  NewsEncoder encoder;
};

NewsEncoderConfig Small() { return {8, 2, 4, 0.2}; }

TEST(NewsEncoder, DefaultOutputShape) {
  Fixture f(NewsEncoderConfig{}, 20, 300);
  EXPECT_EQ(f.encoder.word_dim(), 300u);
  Tensor h = f.encoder.Encode(Item("N", {2, 3, 4, 5, 6}, 32));
  EXPECT_EQ(h.shape(), (Shape{400}));
  EXPECT_EQ(f.params.Get("encoder.msa.wq").shape(), (Shape{300, 400}));
  EXPECT_EQ(f.params.Get("encoder.att.w1").shape(), (Shape{400, 200}));
}

TEST(NewsEncoder, Errors) {
  Fixture f(Small());
  EXPECT_THROW(f.encoder.Encode(Item("N", {2, 99}, 5)), LookupError);
  ParamStore p;
  Rng rng(1);
  EXPECT_THROW(NewsEncoder({10, 3, 4, 0.0}, Tensor::Zeros({5, 4}), p, rng), ConfigError);
}

TEST(NewsEncoder, PoolingWeightsNormalizeAndSkipPads) {
  Fixture f(NewsEncoderConfig{}, 40, 300);
  std::vector<int> tokens;
  for (int i = 0; i < 32; ++i) tokens.push_back(2 + i);
  AttentionLog log;
  f.encoder.Encode(Item("full", tokens, 32), {nullptr, &log});
  f.encoder.Encode(Item("short", {5, 6, 7}, 32), {nullptr, &log});
  std::size_t pools = 0;
  for (const auto& e : log.entries) {
    double sum = 0.0;
    for (double w : e.weights) sum += w;
    EXPECT_NEAR(sum, 1.0, 1e-9) << e.site;
    if (e.site == "encoder.pool") {
      ++pools;
      EXPECT_EQ(e.weights.size(), 32u);
    }
  }
  EXPECT_EQ(pools, 2u);
  const auto& short_pool = log.entries.back();
  for (std::size_t i = 3; i < 32; ++i) EXPECT_EQ(short_pool.weights[i], 0.0);
}

TEST(NewsEncoder, AllPadIsFiniteAndDeterministic) {
  Fixture f(Small());
  NewsItem empty = MakePlaceholderNews(5);
  Tensor a = f.encoder.Encode(empty), b = f.encoder.Encode(empty);
  EXPECT_TRUE(testing::BitEqual(a.data(), b.data()));
  for (double v : a.data()) EXPECT_TRUE(std::isfinite(v));
}

TEST(NewsEncoder, PadRowNeverMatters) {
  Fixture f(Small());
  std::vector<NewsItem> items = {Item("a", {2, 3, 4}, 5), Item("b", {7}, 5),
                                 Item("c", {2, 3, 4, 5, 6}, 5),
                                 MakePlaceholderNews(5)};
  std::vector<std::vector<double>> before;
  for (const auto& it : items) before.push_back(f.encoder.Encode(it).ToVector());
  auto table = f.params.Get("word_embedding").mutable_data();
  for (std::size_t c = 0; c < 6; ++c) table[c] = 17.0 * (c + 1);
  for (std::size_t i = 0; i < items.size(); ++i) {
    EXPECT_EQ(f.encoder.Encode(items[i]).ToVector(), before[i]) << i;
  }
}

TEST(NewsEncoder, InvariantToTokenOrder) {
  Fixture f(NewsEncoderConfig{16, 4, 8, 0.0}, 30, 10);
  std::vector<int> tokens = {4, 9, 2, 17, 11, 25, 3};
  Tensor base = f.encoder.Encode(Item("x", tokens, 10));
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    rng.Shuffle(tokens.begin(), tokens.end());
    Tensor p = f.encoder.Encode(Item("x", tokens, 10));
    EXPECT_LT(testing::MaxAbsDiff(base.data(), p.data()), 1e-9);
  }
}

TEST(NewsEncoder, BatchRowsAreBitExact) {
  Fixture f(Small());
  std::vector<NewsItem> items = {Item("a", {2, 3, 4}, 5), Item("b", {7, 8}, 5),
                                 MakePlaceholderNews(5), Item("c", {11, 2, 3, 9, 10}, 5)};
  std::vector<const NewsItem*> ptrs;
  for (const auto& it : items) ptrs.push_back(&it);
  Tensor batch = f.encoder.EncodeBatch(ptrs);
  ASSERT_EQ(batch.shape(), (Shape{4, 8}));
  for (std::size_t i = 0; i < items.size(); ++i) {
    Tensor row = f.encoder.Encode(items[i]);
    EXPECT_TRUE(testing::BitEqual(Row(batch, i).data(), row.data())) << i;
  }
  std::vector<const NewsItem*> one = {ptrs[1]};
  EXPECT_TRUE(testing::BitEqual(f.encoder.EncodeBatch(one).data(),
                                f.encoder.Encode(items[1]).data()));
  std::vector<const NewsItem*> perm = {ptrs[3], ptrs[0], ptrs[2], ptrs[1]};
  Tensor pb = f.encoder.EncodeBatch(perm);
  const std::size_t order[] = {3, 0, 2, 1};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_TRUE(testing::BitEqual(Row(pb, i).data(), Row(batch, order[i]).data()));
  }
  EXPECT_THROW(f.encoder.EncodeBatch({}), ContractError);
}

TEST(NewsEncoder, BatchGradientIsSumOfItemGradients) {
  Fixture f(Small());
  std::vector<NewsItem> items = {Item("a", {2, 3, 4}, 5), Item("b", {3, 8}, 5)};
  std::vector<const NewsItem*> ptrs = {&items[0], &items[1]};
  Tensor w = RandomTensor({2, 8}, 77, -1, 1, false);
  f.params.ZeroGrad();
  {
    GradientTape tape;
    Sum(Mul(f.encoder.EncodeBatch(ptrs), w)).Backward();
  }
  std::vector<std::vector<double>> batch_grads;
  for (const auto& p : f.params) batch_grads.emplace_back(p.value.grad().begin(), p.value.grad().end());
  f.params.ZeroGrad();
  for (std::size_t i = 0; i < 2; ++i) {
    GradientTape tape;
    Dot(f.encoder.Encode(items[i]), Row(w, i)).Backward();
  }
  std::size_t idx = 0;
  for (const auto& p : f.params) {
    EXPECT_LT(testing::MaxAbsDiff(p.value.grad(), batch_grads[idx++]), 1e-12) << p.name;
  }
}

TEST(NewsEncoder, PassesGradientCheck) {
  Fixture f(Small());
  std::vector<NewsItem> items = {Item("a", {2, 3, 4, 2}, 5), Item("b", {5, 9}, 5)};
  std::vector<const NewsItem*> ptrs = {&items[0], &items[1]};
  Tensor w = RandomTensor({2, 8}, 78, -1, 1, false);
  auto loss = [&] { return Sum(Mul(f.encoder.EncodeBatch(ptrs), w)); };
  auto report = testing::GradCheck(loss, testing::AllParams(f.params));
  EXPECT_TRUE(report.ok()) << report.failed << "/" << report.checked << " " << report.worst;
  // The pad row holds no gradient.
  auto g = f.params.Get("word_embedding").grad();
  for (std::size_t c = 0; c < 6; ++c) EXPECT_EQ(g[c], 0.0);
}

TEST(NewsEncoder, DropoutOnlyWithRng) {
  Fixture f(Small());
  NewsItem item = Item("a", {2, 3, 4}, 5);
  Rng r1(4), r2(4);
  Tensor a = f.encoder.Encode(item, {&r1, nullptr});
  Tensor b = f.encoder.Encode(item, {&r2, nullptr});
  Tensor c = f.encoder.Encode(item);
  EXPECT_TRUE(testing::BitEqual(a.data(), b.data()));
  EXPECT_FALSE(testing::BitEqual(a.data(), c.data()));
}

}  // namespace
}  // namespace digat
