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

#ifndef DIGAT_METRICS_H_
#define DIGAT_METRICS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace digat {

// A metric value plus whether it is defined for the input. Undefined
// values are reported as 0.
struct MetricValue {
  double value = 0.0;
  bool defined = false;
};

// P(score+ > score-) + P(tie) / 2. Undefined when all labels are equal.
MetricValue Auc(std::span<const double> scores, std::span<const int> labels);
// Mean of 1/rank over the clicked items. Undefined without a click.
MetricValue Mrr(std::span<const double> scores, std::span<const int> labels);
// Binary-gain nDCG over the top k. Undefined without a click.
MetricValue NdcgAtK(std::span<const double> scores, std::span<const int> labels,
                    std::size_t k);

// Candidate indices by descending score; equal scores keep their original
// order.
std::vector<std::size_t> RankOrder(std::span<const double> scores);

}  // namespace digat

#endif  // DIGAT_METRICS_H_
