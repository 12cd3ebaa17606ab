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

#include <map>
#include <memory>

#include <benchmark/benchmark.h>

#include "digat/model.h"
#include "digat/sag.h"
#include "digat/trainer.h"
#include "toy_fixture.h"

namespace digat {
namespace {

struct ModelSetup {
  explicit ModelSetup(std::size_t layers)
      : toy(bench::LoadToy({"L=" + std::to_string(layers)})),
        provider(MakeProvider(toy->config, toy->corpus)),
        graphs(MakeGraphSource(toy->config, toy->corpus, provider.get(), nullptr)),
        model(MakeModel(toy->config, toy->corpus)) {}

  std::unique_ptr<bench::ToyFixture> toy;
  std::unique_ptr<SimilarityProvider> provider;
  std::unique_ptr<CandidateGraphSource> graphs;
  std::unique_ptr<DigatModel> model;
};

ModelSetup& Setup(std::size_t layers) {
  static std::map<std::size_t, std::unique_ptr<ModelSetup>> cache;
  auto& slot = cache[layers];
  if (!slot) slot = std::make_unique<ModelSetup>(layers);
  return *slot;
}

// Scores one impression's candidates without a tape.
void BM_ScoreImpression(benchmark::State& state) {
  ModelSetup& s = Setup(static_cast<std::size_t>(state.range(0)));
  const ImpressionRecord& imp = s.toy->corpus.train_impressions.front();
  const auto history = ResolveHistory(imp, s.toy->corpus.news);
  std::vector<CandidateGraph> cands;
  for (const Candidate& c : imp.candidates) cands.push_back(s.graphs->Get(c.news_id));
  for (auto _ : state) benchmark::DoNotOptimize(s.model->ScoreCandidates(history, cands));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cands.size()));
}
BENCHMARK(BM_ScoreImpression)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

// Forward and backward of one positive with S = 4 negatives.
void BM_TrainExample(benchmark::State& state) {
  ModelSetup& s = Setup(static_cast<std::size_t>(state.range(0)));
  Trainer trainer(*s.model, s.toy->config.train);
  TrainingData data{&s.toy->corpus.news, s.toy->corpus.train_impressions, s.graphs.get()};
  Rng rng(1);
  const auto examples =
      SampleNegatives(s.toy->corpus.train_impressions.front(), 4, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trainer.AccumulateExample(data, examples.front(), nullptr));
  }
  s.model->params().ZeroGrad();
}
BENCHMARK(BM_TrainExample)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace digat
