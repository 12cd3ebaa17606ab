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

#ifndef DIGAT_RUN_CONFIG_H_
#define DIGAT_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "digat/model.h"
#include "digat/similarity.h"
#include "digat/trainer.h"

namespace digat {

// Everything a command needs, read from one flat JSON object. Relative
// paths resolve against the directory holding the config file.
struct RunConfig {
  std::filesystem::path base_dir;
  std::string train_news;
  std::string train_behaviors;
  std::string eval_news;
  std::string eval_behaviors;
  // Glove-style word vectors; random initialization when empty.
  std::string embeddings;
  // Per-news vectors for the embedding provider.
  std::string news_vectors;
  ProviderKind provider = ProviderKind::kTfidf;
  std::string sag_cache = "sag_cache.txt";
  std::string output_dir = "out";

  ModelConfig model;
  TrainConfig train;

  // Empty input stays empty.
  std::filesystem::path Resolve(const std::string& path) const;
};

// Defaults: d 400, |T| 32, |H| 50, M 5, K 2, L 3, S 4, lr 1e-4.
RunConfig DefaultRunConfig();

// `overrides` are "key=value" strings applied after the file; values parse
// as JSON and fall back to plain strings. Unknown keys, wrong types and out
// of range values are ConfigErrors.
RunConfig ParseRunConfig(std::string_view json_text,
                         std::span<const std::string> overrides = {},
                         const std::filesystem::path& base_dir = {});
RunConfig LoadRunConfig(const std::filesystem::path& path,
                        std::span<const std::string> overrides = {});

// Canonical JSON with every key.
std::string RunConfigToJson(const RunConfig& config);

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
std::uint64_t Fnv1a(std::string_view data, std::uint64_t hash = kFnvOffset);

// Hash of the keys that shape the parameters and the forward pass.
std::uint64_t ModelHash(const RunConfig& config);

}  // namespace digat

#endif  // DIGAT_RUN_CONFIG_H_
