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

#include "digat/ops.h"
#include "digat/random.h"
#include "digat/tensor.h"

namespace digat {
namespace {

Tensor Uniform(Shape shape, std::uint64_t seed, bool grad) {
  Rng rng(seed);
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  std::vector<double> v(n);
  for (double& x : v) x = rng.Uniform(-1.0, 1.0);
  return Tensor::FromData(std::move(shape), std::move(v), grad);
}

void BM_MatMul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Tensor a = Uniform({n, n}, 1, false), b = Uniform({n, n}, 2, false);
  for (auto _ : state) benchmark::DoNotOptimize(MatMul(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n * n));
}
BENCHMARK(BM_MatMul)->Arg(32)->Arg(128)->Arg(400);

void BM_MatMulBackward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Tensor a = Uniform({n, n}, 1, true), b = Uniform({n, n}, 2, true);
  for (auto _ : state) {
    GradientTape tape;
    Sum(Tanh(MatMul(a, b))).Backward();
  }
}
BENCHMARK(BM_MatMulBackward)->Arg(32)->Arg(128);

void BM_Softmax(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Tensor a = Uniform({n, n}, 3, false);
  for (auto _ : state) benchmark::DoNotOptimize(Softmax(a));
}
BENCHMARK(BM_Softmax)->Arg(32)->Arg(256);

}  // namespace
}  // namespace digat
