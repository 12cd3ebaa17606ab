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

#ifndef DIGAT_EVALUATOR_H_
#define DIGAT_EVALUATOR_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "digat/metrics.h"
#include "digat/model.h"
#include "digat/trainer.h"

namespace digat {

struct ImpressionResult {
  std::string impression_id;
  std::vector<std::string> candidates;
  std::vector<double> scores;
  std::vector<int> labels;
  MetricValue auc, mrr, ndcg5, ndcg10;
};

// Unweighted means over the impressions where each metric is defined.
struct EvalReport {
  double auc = 0.0;
  double mrr = 0.0;
  double ndcg5 = 0.0;
  double ndcg10 = 0.0;
  std::size_t impressions = 0;
  // Impressions left out of the AUC mean (single-class labels) and of the
  // ranking means (no click).
  std::size_t auc_excluded = 0;
  std::size_t ranking_excluded = 0;
  std::vector<ImpressionResult> per_impression;
};

ImpressionResult ScoreImpression(const std::string& impression_id,
                                 std::vector<std::string> candidates,
                                 std::vector<double> scores,
                                 std::vector<int> labels);
EvalReport Aggregate(std::vector<ImpressionResult> results);

// Scores every candidate of every impression (no tape) and aggregates.
EvalReport Evaluate(const DigatModel& model, const TrainingData& data);

// key=value lines, %.17g numbers.
void WriteReportText(std::ostream& out, const EvalReport& report,
                     std::uint64_t config_hash);
void WriteReportJson(std::ostream& out, const EvalReport& report,
                     std::uint64_t config_hash);
// One row per impression with its four metrics and definedness flags.
void WriteImpressionCsv(std::ostream& out, const EvalReport& report);
// One row per (impression, candidate) with label and score.
void WriteScoresCsv(std::ostream& out, const EvalReport& report);

}  // namespace digat

#endif  // DIGAT_EVALUATOR_H_
