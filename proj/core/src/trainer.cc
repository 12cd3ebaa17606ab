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

#include "digat/trainer.h"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "digat/errors.h"
#include "digat/ops.h"
#include "digat/random.h"

namespace digat {

Tensor NceLoss(const Tensor& positive, const Tensor& negatives) {
  if (positive.size() != 1 || negatives.rank() != 1 || negatives.size() == 0) {
    throw ContractError("NCE loss needs one positive and at least one negative");
  }
  Tensor all = Concat({Reshape(positive, {1}), negatives});
  return Sub(LogSumExp(all), Reshape(positive, {}));
}

Tensor NceLoss(const Tensor& scores) {
  if (scores.rank() != 1 || scores.size() < 2) {
    throw ContractError("NCE loss needs a positive and at least one negative");
  }
  const std::size_t n = scores.size();
  Tensor row = Reshape(scores, {1, n});
  return NceLoss(Reshape(SliceCols(row, 0, 1), {}),
                 Reshape(SliceCols(row, 1, n - 1), {n - 1}));
}

std::vector<const NewsItem*> ResolveHistory(const ImpressionRecord& record,
                                            const NewsStore& news) {
  std::vector<const NewsItem*> items;
  items.reserve(record.history.size());
  for (const std::string& id : record.history) items.push_back(&news.Get(id));
  return items;
}

Trainer::Trainer(DigatModel& model, const TrainConfig& config)
    : model_(model), config_(config) {
  if (config.negatives < 1) throw ConfigError("S must be at least 1");
  if (!(config.learning_rate > 0.0)) {
    throw ConfigError("learning rate must be positive");
  }
  if (config.batch_size < 1) throw ConfigError("batch size must be at least 1");
  if (!(config.clip_norm > 0.0)) throw ConfigError("clip_norm must be positive");
  optimizer_.options.learning_rate = config.learning_rate;
  optimizer_.options.beta1 = config.beta1;
  optimizer_.options.beta2 = config.beta2;
  optimizer_.options.epsilon = config.adam_epsilon;
}

namespace {

std::string GradientSummary(const ParamStore& params) {
  std::ostringstream out;
  for (const auto& [name, value] : params) {
    if (!value.has_grad()) continue;
    double sq = 0.0;
    for (double g : value.grad()) sq += g * g;
    out << "\n  " << name << ": " << std::sqrt(sq);
  }
  return out.str();
}

}  // namespace

double Trainer::AccumulateExample(const TrainingData& data,
                                  const TrainingExample& example,
                                  Rng* dropout_rng) {
  std::vector<const NewsItem*> history =
      ResolveHistory(*example.impression, *data.news);
  std::vector<CandidateGraph> candidates;
  candidates.reserve(1 + example.negatives.size());
  candidates.push_back(data.graphs->Get(example.positive));
  for (const std::string& id : example.negatives) {
    candidates.push_back(data.graphs->Get(id));
  }
  GradientTape tape;
  ForwardOptions options;
  options.dropout_rng = config_.deterministic ? nullptr : dropout_rng;
  Tensor scores = model_.ScoreCandidates(history, candidates, options);
  bool finite = true;
  for (double s : scores.data()) finite = finite && std::isfinite(s);
  Tensor loss;
  if (finite) loss = NceLoss(scores);
  if (!finite || !std::isfinite(loss.item())) {
    throw NumericError("non-finite loss at step " +
                       std::to_string(optimizer_.step + 1) + " (epoch " +
                       std::to_string(epoch_ + 1) +
                       ", impression " + example.impression_id +
                       "); accumulated gradient norms:" +
                       GradientSummary(model_.params()));
  }
  loss.Backward();
  return loss.item();
}

double Trainer::ApplyUpdate(std::size_t batch_size) {
  ParamStore& params = model_.params();
  params.ScaleGrad(1.0 / static_cast<double>(batch_size));
  double norm = 0.0;
  try {
    norm = ClipGlobalNorm(params, config_.clip_norm);
  } catch (const NumericError& err) {
    throw NumericError(std::string(err.what()) + " at step " +
                       std::to_string(optimizer_.step + 1) +
                       "; gradient norms:" + GradientSummary(params));
  }
  AdamStep(params, optimizer_);
  params.ZeroGrad();
  return norm;
}

EpochRecord Trainer::RunEpoch(
    const TrainingData& data,
    const std::function<void(const StepRecord&)>& on_step) {
  if (!data.news || !data.graphs) {
    throw ContractError("training data needs a news store and graph source");
  }
  Rng rng(DeriveSeed(config_.seed, 2 * epoch_));
  Rng dropout_rng(DeriveSeed(config_.seed, 2 * epoch_ + 1));
  EpochRecord record;
  record.epoch = epoch_ + 1;
  std::vector<TrainingExample> examples;
  for (const ImpressionRecord& imp : data.impressions) {
    auto sampled = SampleNegatives(imp, config_.negatives, rng);
    if (sampled.empty()) ++record.skipped_impressions;
    for (auto& ex : sampled) examples.push_back(std::move(ex));
  }
  rng.Shuffle(examples.begin(), examples.end());

  model_.params().ZeroGrad();
  double total = 0.0;
  for (std::size_t begin = 0; begin < examples.size();
       begin += config_.batch_size) {
    const std::size_t end =
        std::min(examples.size(), begin + config_.batch_size);
    StepRecord step;
    step.epoch = record.epoch;
    step.batch_size = end - begin;
    for (std::size_t i = begin; i < end; ++i) {
      step.loss += AccumulateExample(data, examples[i], &dropout_rng);
    }
    step.grad_norm = ApplyUpdate(step.batch_size);
    step.step = optimizer_.step;
    total += step.loss;
    if (on_step) on_step(step);
  }
  record.examples = examples.size();
  record.mean_loss =
      examples.empty() ? 0.0 : total / static_cast<double>(examples.size());
  ++epoch_;
  return record;
}

void Trainer::Restore(const Checkpoint& checkpoint) {
  RestoreParams(checkpoint, model_.params());
  if (checkpoint.optimizer) {
    AdamOptions options = optimizer_.options;
    optimizer_ = *checkpoint.optimizer;
    optimizer_.options = options;
  }
  optimizer_.step = checkpoint.header.step;
  epoch_ = checkpoint.header.epoch;
}

CheckpointHeader Trainer::Header(std::uint64_t config_hash) const {
  CheckpointHeader h;
  h.config_hash = config_hash;
  h.seed = config_.seed;
  h.step = optimizer_.step;
  h.epoch = epoch_;
  return h;
}

}  // namespace digat
