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

#include "digat/evaluator.h"

#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

#include "digat/errors.h"

namespace digat {

namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

ImpressionResult ScoreImpression(const std::string& impression_id,
                                 std::vector<std::string> candidates,
                                 std::vector<double> scores,
                                 std::vector<int> labels) {
  ImpressionResult r;
  r.impression_id = impression_id;
  r.auc = Auc(scores, labels);
  r.mrr = Mrr(scores, labels);
  r.ndcg5 = NdcgAtK(scores, labels, 5);
  r.ndcg10 = NdcgAtK(scores, labels, 10);
  r.candidates = std::move(candidates);
  r.scores = std::move(scores);
  r.labels = std::move(labels);
  return r;
}

EvalReport Aggregate(std::vector<ImpressionResult> results) {
  EvalReport report;
  report.impressions = results.size();
  std::size_t auc_n = 0, rank_n = 0;
  for (const ImpressionResult& r : results) {
    if (r.auc.defined) {
      report.auc += r.auc.value;
      ++auc_n;
    }
    if (r.mrr.defined) {
      report.mrr += r.mrr.value;
      report.ndcg5 += r.ndcg5.value;
      report.ndcg10 += r.ndcg10.value;
      ++rank_n;
    }
  }
  if (auc_n) report.auc /= static_cast<double>(auc_n);
  if (rank_n) {
    report.mrr /= static_cast<double>(rank_n);
    report.ndcg5 /= static_cast<double>(rank_n);
    report.ndcg10 /= static_cast<double>(rank_n);
  }
  report.auc_excluded = results.size() - auc_n;
  report.ranking_excluded = results.size() - rank_n;
  report.per_impression = std::move(results);
  return report;
}

EvalReport Evaluate(const DigatModel& model, const TrainingData& data) {
  if (!data.news || !data.graphs) {
    throw ContractError("evaluation data needs a news store and graph source");
  }
  std::vector<ImpressionResult> results;
  results.reserve(data.impressions.size());
  for (const ImpressionRecord& imp : data.impressions) {
    std::vector<const NewsItem*> history = ResolveHistory(imp, *data.news);
    std::vector<CandidateGraph> graphs;
    std::vector<std::string> ids;
    std::vector<int> labels;
    for (const Candidate& c : imp.candidates) {
      graphs.push_back(data.graphs->Get(c.news_id));
      ids.push_back(c.news_id);
      labels.push_back(c.label);
    }
    Tensor scores = model.ScoreCandidates(history, graphs);
    results.push_back(ScoreImpression(imp.impression_id, std::move(ids),
                                      scores.ToVector(), std::move(labels)));
  }
  return Aggregate(std::move(results));
}

void WriteReportText(std::ostream& out, const EvalReport& report,
                     std::uint64_t config_hash) {
  out << "config_hash=" << Hex(config_hash) << '\n'
      << "impressions=" << report.impressions << '\n'
      << "auc=" << Num(report.auc) << '\n'
      << "mrr=" << Num(report.mrr) << '\n'
      << "ndcg5=" << Num(report.ndcg5) << '\n'
      << "ndcg10=" << Num(report.ndcg10) << '\n'
      << "auc_excluded=" << report.auc_excluded << '\n'
      << "ranking_excluded=" << report.ranking_excluded << '\n';
}

void WriteReportJson(std::ostream& out, const EvalReport& report,
                     std::uint64_t config_hash) {
  nlohmann::ordered_json j;
  j["config_hash"] = Hex(config_hash);
  j["impressions"] = report.impressions;
  j["auc"] = report.auc;
  j["mrr"] = report.mrr;
  j["ndcg5"] = report.ndcg5;
  j["ndcg10"] = report.ndcg10;
  j["auc_excluded"] = report.auc_excluded;
  j["ranking_excluded"] = report.ranking_excluded;
  out << j.dump(2) << '\n';
}

void WriteImpressionCsv(std::ostream& out, const EvalReport& report) {
  out << "impression_id,candidates,auc,auc_defined,mrr,ndcg5,ndcg10,"
         "ranking_defined\n";
  for (const ImpressionResult& r : report.per_impression) {
    out << r.impression_id << ',' << r.scores.size() << ',' << Num(r.auc.value)
        << ',' << r.auc.defined << ',' << Num(r.mrr.value) << ','
        << Num(r.ndcg5.value) << ',' << Num(r.ndcg10.value) << ','
        << r.mrr.defined << '\n';
  }
}

void WriteScoresCsv(std::ostream& out, const EvalReport& report) {
  out << "impression_id,news_id,label,score\n";
  for (const ImpressionResult& r : report.per_impression) {
    for (std::size_t i = 0; i < r.scores.size(); ++i) {
      out << r.impression_id << ',' << r.candidates[i] << ',' << r.labels[i]
          << ',' << Num(r.scores[i]) << '\n';
    }
  }
}

}  // namespace digat
