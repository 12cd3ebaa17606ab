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

#include <benchmark/benchmark.h>

#include "digat/sag.h"
#include "toy_fixture.h"

namespace digat {
namespace {

struct SagSetup {
  std::unique_ptr<bench::ToyFixture> toy = bench::LoadToy({});
  std::unique_ptr<SimilarityProvider> provider = MakeProvider(toy->config, toy->corpus);
  std::vector<std::string> ids = toy->corpus.TrainIds();
};

const SagSetup& Setup() {
  static const SagSetup s;
  return s;
}

void BM_BuildSag(benchmark::State& state) {
  const SagSetup& s = Setup();
  const int m = static_cast<int>(state.range(0)), k = static_cast<int>(state.range(1));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildSag(s.ids[i++ % s.ids.size()], *s.provider, m, k));
  }
}
BENCHMARK(BM_BuildSag)->Args({2, 1})->Args({5, 1})->Args({5, 2})
    ->Unit(benchmark::kMicrosecond);

// Whole-cache build; the retrieval memo is shared across candidates.
void BM_BuildSagCache(benchmark::State& state) {
  const SagSetup& s = Setup();
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildSagCache(s.ids, *s.provider, 5, 2, 0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.ids.size()));
}
BENCHMARK(BM_BuildSagCache)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace digat
