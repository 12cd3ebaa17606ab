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

#include "digat/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "digat/errors.h"

namespace digat {

namespace {

void CheckInputs(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw ContractError("metric inputs differ in length: " +
                        std::to_string(scores.size()) + " scores, " +
                        std::to_string(labels.size()) + " labels");
  }
  for (int label : labels) {
    if (label != 0 && label != 1) {
      throw ContractError("labels must be 0 or 1, got " + std::to_string(label));
    }
  }
}

}  // namespace

std::vector<std::size_t> RankOrder(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a] > scores[b];
                   });
  return order;
}

MetricValue Auc(std::span<const double> scores, std::span<const int> labels) {
  CheckInputs(scores, labels);
  const std::size_t pos = std::count(labels.begin(), labels.end(), 1);
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) return {};
  // Mann-Whitney U with midranks for ties.
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] == 1) rank_sum += midrank;
    }
    i = j;
  }
  const double p = static_cast<double>(pos), n = static_cast<double>(neg);
  return {(rank_sum - p * (p + 1.0) / 2.0) / (p * n), true};
}

MetricValue Mrr(std::span<const double> scores, std::span<const int> labels) {
  CheckInputs(scores, labels);
  auto order = RankOrder(scores);
  double total = 0.0;
  std::size_t clicks = 0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (labels[order[r]] == 1) {
      total += 1.0 / static_cast<double>(r + 1);
      ++clicks;
    }
  }
  if (clicks == 0) return {};
  return {total / static_cast<double>(clicks), true};
}

MetricValue NdcgAtK(std::span<const double> scores, std::span<const int> labels,
                    std::size_t k) {
  CheckInputs(scores, labels);
  if (k == 0) throw ContractError("nDCG needs k >= 1");
  const std::size_t clicks = std::count(labels.begin(), labels.end(), 1);
  if (clicks == 0) return {};
  auto order = RankOrder(scores);
  double dcg = 0.0, ideal = 0.0;
  for (std::size_t i = 0; i < std::min(k, order.size()); ++i) {
    const double discount = 1.0 / std::log2(static_cast<double>(i) + 2.0);
    if (labels[order[i]] == 1) dcg += discount;
    if (i < clicks) ideal += discount;
  }
  return {dcg / ideal, true};
}

}  // namespace digat
