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

#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "digat/errors.h"
#include "digat/pipeline.h"
#include "digat/run_config.h"
#include "support/test_support.h"

namespace digat {
namespace {

RunConfig Parse(const std::string& json, std::vector<std::string> overrides = {}) {
  return ParseRunConfig(json, overrides);
}

TEST(RunConfig, Defaults) {
  const RunConfig c = DefaultRunConfig();
  EXPECT_EQ(c.model.d, 400u);
  EXPECT_EQ(c.model.title_len, 32u);
  EXPECT_EQ(c.model.history_len, 50u);
  EXPECT_EQ(c.model.m, 5);
  EXPECT_EQ(c.model.k, 2);
  EXPECT_EQ(c.model.layers, 3u);
  EXPECT_EQ(c.train.negatives, 4u);
  EXPECT_EQ(c.train.learning_rate, 1e-4);
  EXPECT_EQ(c.model.sa_mode, SaMode::kGraph);
  EXPECT_TRUE(c.model.interact_news);
  EXPECT_TRUE(c.model.interact_user);
  EXPECT_EQ(c.provider, ProviderKind::kTfidf);
  const RunConfig empty = Parse("");
  EXPECT_EQ(RunConfigToJson(empty), RunConfigToJson(c));
}

TEST(RunConfig, FileThenOverrides) {
  const RunConfig c = Parse(R"({"d": 64, "M": 3, "sa_mode": "seq", "lr": 0.01})",
                            {"M=4", "interact_user=false", "output_dir=runs/a"});
  EXPECT_EQ(c.model.d, 64u);
  EXPECT_EQ(c.model.m, 4);
  EXPECT_EQ(c.model.sa_mode, SaMode::kSeq);
  EXPECT_FALSE(c.model.interact_user);
  EXPECT_EQ(c.train.learning_rate, 0.01);
  EXPECT_EQ(c.output_dir, "runs/a");
}

TEST(RunConfig, RoundTripsThroughJson) {
  const RunConfig c = Parse(R"({"K": 1, "provider": "embedding", "seed": 9})");
  const RunConfig again = Parse(RunConfigToJson(c));
  EXPECT_EQ(RunConfigToJson(again), RunConfigToJson(c));
  EXPECT_EQ(again.model.k, 1);
  EXPECT_EQ(again.provider, ProviderKind::kEmbedding);
  EXPECT_EQ(again.train.seed, 9u);
}

TEST(RunConfig, Rejections) {
  EXPECT_THROW(Parse(R"({"hidden_size": 3})"), ConfigError);
  EXPECT_THROW(Parse("", {"bogus=1"}), ConfigError);
  EXPECT_THROW(Parse("", {"noequals"}), ConfigError);
  EXPECT_THROW(Parse("[1, 2]"), ConfigError);
  EXPECT_THROW(Parse("{not json"), ConfigError);
  EXPECT_THROW(Parse(R"({"d": "wide"})"), ConfigError);
  EXPECT_THROW(Parse(R"({"d": -3})"), ConfigError);
  EXPECT_THROW(Parse(R"({"interact_news": 1})"), ConfigError);
  EXPECT_THROW(Parse(R"({"sa_mode": "tree"})"), ConfigError);
  EXPECT_THROW(Parse(R"({"provider": "bm25"})"), ConfigError);
  EXPECT_THROW(Parse(R"({"S": 0})"), ConfigError);
  EXPECT_THROW(Parse(R"({"L": 0})"), ConfigError);
  EXPECT_THROW(Parse(R"({"lr": 0})"), ConfigError);
  EXPECT_THROW(Parse(R"({"dropout": 1.0})"), ConfigError);
  EXPECT_THROW(Parse(R"({"clip_norm": 0})"), ConfigError);
  EXPECT_THROW(LoadRunConfig("/nonexistent/dir/config.json"), ConfigError);
}

TEST(RunConfig, UnknownKeyNamesTheKey) {
  try {
    Parse(R"({"d": 8, "dimension": 8})");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("dimension"), std::string::npos);
  }
}

TEST(RunConfig, PathsResolveAgainstConfigDir) {
  const auto dir = testing::ScratchDir("config_paths");
  {
    std::ofstream f(dir / "run.json");
    f << R"({"train_news": "data/news.tsv", "output_dir": "/abs/out"})";
  }
  const RunConfig c = LoadRunConfig(dir / "run.json");
  EXPECT_EQ(c.Resolve(c.train_news), dir / "data/news.tsv");
  EXPECT_EQ(c.Resolve(c.output_dir), std::filesystem::path("/abs/out"));
  EXPECT_TRUE(c.Resolve(c.embeddings).empty());
}

TEST(Fnv1a, PublishedVectors) {
  EXPECT_EQ(Fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(Fnv1a("foobar"), 0x85944171f73967e8ULL);
  EXPECT_EQ(Fnv1a("bar", Fnv1a("foo")), Fnv1a("foobar"));
}

TEST(ModelHash, TracksOnlyModelKeys) {
  const std::uint64_t base = ModelHash(Parse(""));
  EXPECT_EQ(ModelHash(Parse("", {"lr=0.5"})), base);
  EXPECT_EQ(ModelHash(Parse("", {"epochs=9"})), base);
  EXPECT_EQ(ModelHash(Parse("", {"output_dir=x"})), base);
  EXPECT_NE(ModelHash(Parse("", {"d=64"})), base);
  EXPECT_NE(ModelHash(Parse("", {"L=2"})), base);
  EXPECT_NE(ModelHash(Parse("", {"interact_news=false"})), base);
  EXPECT_NE(ModelHash(Parse("", {"sa_mode=none"})), base);
}

TEST(SagConfigHash, FollowsRetrievalSettingsAndFileBytes) {
  auto world = testing::MakeToyWorld("sag_hash", testing::SmallToyOptions());
  const RunConfig& c = world.config;
  const std::uint64_t base = SagConfigHash(c);
  EXPECT_EQ(SagConfigHash(c), base);
  auto with = [&](const std::string& kv) {
    return SagConfigHash(testing::ToyRunConfig(world.dir, {kv}));
  };
  EXPECT_EQ(with("L=5"), base);
  EXPECT_EQ(with("lr=0.5"), base);
  EXPECT_NE(with("M=3"), base);
  EXPECT_NE(with("K=2"), base);
  {
    std::ofstream f(c.Resolve(c.train_news), std::ios::app);
    f << "\n";
  }
  EXPECT_NE(SagConfigHash(c), base);
}

}  // namespace
}  // namespace digat
