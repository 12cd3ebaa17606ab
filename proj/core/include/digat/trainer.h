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

#ifndef DIGAT_TRAINER_H_
#define DIGAT_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "digat/checkpoint.h"
#include "digat/mind.h"
#include "digat/model.h"
#include "digat/optim.h"
#include "digat/tensor.h"

namespace digat {

// -log(exp(s+) / (exp(s+) + sum_j exp(s-_j))), via log-sum-exp.
Tensor NceLoss(const Tensor& positive, const Tensor& negatives);
// Same loss with the positive score at index 0 of `scores`.
Tensor NceLoss(const Tensor& scores);

struct TrainConfig {
  std::size_t epochs = 5;
  std::size_t batch_size = 32;
  double learning_rate = 1e-4;
  std::size_t negatives = 4;
  double clip_norm = 1.0;
  std::uint64_t seed = 42;
  // Disables dropout.
  bool deterministic = true;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
};

struct TrainingData {
  const NewsStore* news = nullptr;
  std::span<const ImpressionRecord> impressions;
  const CandidateGraphSource* graphs = nullptr;
};

struct StepRecord {
  std::uint64_t step = 0;
  std::size_t epoch = 0;
  std::size_t batch_size = 0;
  // Sum of the example losses in the batch.
  double loss = 0.0;
  // Global gradient norm of the batch mean, before clipping.
  double grad_norm = 0.0;
};

struct EpochRecord {
  std::size_t epoch = 0;
  std::size_t examples = 0;
  std::size_t skipped_impressions = 0;
  double mean_loss = 0.0;
};

// History ids resolved against the store; the placeholder id maps to the
// placeholder item.
std::vector<const NewsItem*> ResolveHistory(const ImpressionRecord& record,
                                            const NewsStore& news);

class Trainer {
 public:
  Trainer(DigatModel& model, const TrainConfig& config);

  // Runs the next epoch. Negatives and batch order come from an RNG seeded
  // by (seed, epoch index), so a resumed run replays the same stream.
  EpochRecord RunEpoch(const TrainingData& data,
                       const std::function<void(const StepRecord&)>& on_step = {});

  // Forward and backward of one example on a fresh tape; returns its loss
  // and accumulates its gradient into the parameters.
  double AccumulateExample(const TrainingData& data,
                           const TrainingExample& example, Rng* dropout_rng);
  // Averages accumulated gradients over `batch_size`, clips, updates, and
  // clears them. Returns the pre-clip norm.
  double ApplyUpdate(std::size_t batch_size);

  // Restores parameters, optimizer state and counters.
  void Restore(const Checkpoint& checkpoint);
  CheckpointHeader Header(std::uint64_t config_hash) const;

  std::uint64_t step() const { return optimizer_.step; }
  std::size_t epoch() const { return epoch_; }
  const AdamState& optimizer() const { return optimizer_; }
  const TrainConfig& config() const { return config_; }

 private:
  DigatModel& model_;
  TrainConfig config_;
  AdamState optimizer_;
  std::size_t epoch_ = 0;
};

}  // namespace digat

#endif  // DIGAT_TRAINER_H_
