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

#ifndef DIGAT_BENCHMARKS_TOY_FIXTURE_H_
#define DIGAT_BENCHMARKS_TOY_FIXTURE_H_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "digat/pipeline.h"
#include "digat/run_config.h"
#include "digat/synthetic.h"

namespace digat::bench {

// The default toy dataset, loaded once per process with `overrides` on top
// of the toy model settings.
struct ToyFixture {
  RunConfig config;
  Corpus corpus;
};

inline std::unique_ptr<ToyFixture> LoadToy(const std::vector<std::string>& overrides) {
  const auto dir = std::filesystem::temp_directory_path() / "digat_bench_toy";
  WriteToyData(GenerateToyData(ToyOptions{}), dir);
  std::vector<std::string> settings = {
      "train_news=train_news.tsv", "train_behaviors=train_behaviors.tsv",
      "eval_news=eval_news.tsv",   "eval_behaviors=eval_behaviors.tsv",
      "d=32", "word_dim=32", "title_len=10", "history_len=10", "att_hidden=32",
      "M=2", "K=1", "L=2", "lr=0.001"};
  settings.insert(settings.end(), overrides.begin(), overrides.end());
  auto f = std::make_unique<ToyFixture>();
  f->config = ParseRunConfig("", settings, dir);
  f->corpus = LoadCorpus(f->config, true);
  return f;
}

}  // namespace digat::bench

#endif  // DIGAT_BENCHMARKS_TOY_FIXTURE_H_
