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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "digat/errors.h"
#include "digat/metrics.h"
#include "digat/random.h"
#include "support/metric_oracle.h"

namespace digat {
namespace {

using Scores = std::vector<double>;
using Labels = std::vector<int>;

TEST(Auc, SmallCases) {
  EXPECT_DOUBLE_EQ(Auc(Scores{0.9, 0.1}, Labels{1, 0}).value, 1.0);
  EXPECT_DOUBLE_EQ(Auc(Scores{0.5, 0.5}, Labels{1, 0}).value, 0.5);
  EXPECT_DOUBLE_EQ(Auc(Scores{0.1, 0.9}, Labels{1, 0}).value, 0.0);
  // One positive beats two of three negatives and ties the third.
  EXPECT_DOUBLE_EQ(Auc(Scores{0.5, 0.1, 0.5, 0.2}, Labels{1, 0, 0, 0}).value,
                   2.5 / 3.0);
}

TEST(Auc, UndefinedWithOneClass) {
  EXPECT_FALSE(Auc(Scores{0.1, 0.2}, Labels{1, 1}).defined);
  EXPECT_FALSE(Auc(Scores{0.1, 0.2}, Labels{0, 0}).defined);
  EXPECT_FALSE(Auc(Scores{}, Labels{}).defined);
}

TEST(Mrr, SecondOfFive) {
  const Scores s{0.9, 0.8, 0.7, 0.6, 0.5};
  EXPECT_DOUBLE_EQ(Mrr(s, Labels{0, 1, 0, 0, 0}).value, 0.5);
  // Clicks at ranks 1 and 3 average to (1 + 1/3) / 2.
  EXPECT_DOUBLE_EQ(Mrr(s, Labels{1, 0, 1, 0, 0}).value, 2.0 / 3.0);
  EXPECT_FALSE(Mrr(s, Labels{0, 0, 0, 0, 0}).defined);
}

TEST(Ndcg, SecondOfFive) {
  const Scores s{0.9, 0.8, 0.7, 0.6, 0.5};
  const auto v = NdcgAtK(s, Labels{0, 1, 0, 0, 0}, 5);
  EXPECT_TRUE(v.defined);
  EXPECT_NEAR(v.value, 0.6309297535714574, 1e-15);
  EXPECT_DOUBLE_EQ(NdcgAtK(Scores{0.4, 0.3, 0.2, 0.1}, Labels{0, 1, 0, 0}, 5).value,
                   1.0 / std::log2(3.0));
}

TEST(Ndcg, CutoffAndEmpty) {
  const Scores s{0.9, 0.8, 0.7, 0.6, 0.5, 0.4};
  EXPECT_EQ(NdcgAtK(s, Labels{0, 0, 0, 0, 0, 1}, 5).value, 0.0);
  EXPECT_TRUE(NdcgAtK(s, Labels{0, 0, 0, 0, 0, 1}, 5).defined);
  const auto none = NdcgAtK(s, Labels{0, 0, 0, 0, 0, 0}, 5);
  EXPECT_FALSE(none.defined);
  EXPECT_EQ(none.value, 0.0);
  EXPECT_DOUBLE_EQ(NdcgAtK(s, Labels{1, 1, 0, 0, 0, 0}, 10).value, 1.0);
  EXPECT_THROW(NdcgAtK(s, Labels{1, 0, 0, 0, 0, 0}, 0), ContractError);
}

TEST(Metrics, PerfectRanking) {
  const Scores s{3.0, 2.0, 1.0, 0.0};
  const Labels l{1, 1, 0, 0};
  EXPECT_DOUBLE_EQ(Auc(s, l).value, 1.0);
  EXPECT_DOUBLE_EQ(Mrr(s, l).value, 0.75);
  EXPECT_DOUBLE_EQ(NdcgAtK(s, l, 5).value, 1.0);
}

TEST(Metrics, TiesKeepInputOrder) {
  // All scores equal: the stable order is the input order.
  const Scores s{0.3, 0.3, 0.3};
  EXPECT_DOUBLE_EQ(Mrr(s, Labels{0, 0, 1}).value, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(Mrr(s, Labels{1, 0, 0}).value, 1.0);
  EXPECT_EQ(RankOrder(s), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(RankOrder(Scores{0.1, 0.5, 0.1, 0.5}),
            (std::vector<std::size_t>{1, 3, 0, 2}));
}

TEST(Metrics, InputErrors) {
  EXPECT_THROW(Auc(Scores{0.1}, Labels{1, 0}), ContractError);
  EXPECT_THROW(Mrr(Scores{0.1, 0.2}, Labels{1, 2}), ContractError);
  EXPECT_THROW(NdcgAtK(Scores{0.1}, Labels{-1}, 5), ContractError);
}

TEST(Metrics, MatchOraclesOnRandomVectors) {
  const auto report = testing::RunMetricTrials(1000, 99);
  EXPECT_EQ(report.vectors, 1000u);
  EXPECT_EQ(report.tied_vectors, 500u);
  EXPECT_EQ(report.flag_mismatches, 0u);
  EXPECT_LE(report.worst_auc, 1e-9);
  EXPECT_LE(report.worst_mrr, 1e-12);
  EXPECT_LE(report.worst_ndcg, 1e-12);
}

TEST(Metrics, MonotoneTransformInvariance) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.UniformInt(20);
    Scores s(n), t(n);
    Labels l(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.UniformInt(6)) - 2.5;
      t[i] = std::exp(3.0 * s[i]) + 7.0;
      l[i] = static_cast<int>(rng.UniformInt(2));
    }
    EXPECT_EQ(Auc(s, l).value, Auc(t, l).value);
    EXPECT_EQ(Mrr(s, l).value, Mrr(t, l).value);
    EXPECT_EQ(NdcgAtK(s, l, 5).value, NdcgAtK(t, l, 5).value);
    EXPECT_EQ(NdcgAtK(s, l, 10).value, NdcgAtK(t, l, 10).value);
  }
}

TEST(Auc, NegatedScoresComplement) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.UniformInt(30);
    Scores s(n), neg(n);
    Labels l(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = rng.Normal();
      neg[i] = -s[i];
      l[i] = i % 2 == 0 ? 1 : static_cast<int>(rng.UniformInt(2));
    }
    if (l[1] == 1) l[1] = 0;
    EXPECT_NEAR(Auc(s, l).value, 1.0 - Auc(neg, l).value, 1e-12);
  }
}

}  // namespace
}  // namespace digat
