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

#ifndef DIGAT_SYNTHETIC_H_
#define DIGAT_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace digat {

// MIND-format toy data with planted preferences: every user follows one
// topic, clicks only news of that topic, and skips everything else.
// Held-out impressions show news that never appears in the training split.
struct ToyOptions {
  std::size_t topics = 5;
  // Distinct title words over all topics, shared words included.
  std::size_t words = 498;
  std::size_t shared_words = 48;
  std::size_t title_words = 8;
  std::size_t topic_words_per_title = 5;
  std::size_t train_news = 300;
  std::size_t heldout_news = 100;
  std::size_t users = 50;
  std::size_t history = 10;
  std::size_t train_impressions = 200;
  std::size_t heldout_impressions = 100;
  std::size_t negatives_min = 4;
  std::size_t negatives_max = 7;
  std::uint64_t seed = 7;
};

struct ToyData {
  // File contents, one MIND line per entry.
  std::vector<std::string> train_news;
  std::vector<std::string> heldout_news;
  std::vector<std::string> train_behaviors;
  std::vector<std::string> heldout_behaviors;
};

ToyData GenerateToyData(const ToyOptions& options);

// Writes train_news.tsv, train_behaviors.tsv, eval_news.tsv and
// eval_behaviors.tsv into `dir`, creating it if needed.
void WriteToyData(const ToyData& data, const std::filesystem::path& dir);

}  // namespace digat

#endif  // DIGAT_SYNTHETIC_H_
