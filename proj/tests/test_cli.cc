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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "commands.h"
#include "digat/errors.h"
#include "digat/run_config.h"
#include "digat/sag.h"
#include "digat/synthetic.h"
#include "support/test_support.h"

namespace digat {
namespace {

namespace fs = std::filesystem;
namespace t = tools;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Value of "key=value" in command output, or "" when absent.
std::string Field(const std::string& text, const std::string& key) {
  for (const std::string& line : Lines(text)) {
    if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
  }
  return "";
}

// Small toy dataset plus a config.json beside it.
fs::path MakeRunDir(const std::string& name,
                    const std::vector<std::string>& extra = {}) {
  const fs::path dir = testing::ScratchDir(name);
  WriteToyData(GenerateToyData(testing::SmallToyOptions()), dir);
  std::vector<std::string> settings = {"epochs=2", "batch_size=4"};
  settings.insert(settings.end(), extra.begin(), extra.end());
  std::ofstream(dir / "config.json")
      << RunConfigToJson(testing::ToyRunConfig(dir, settings));
  return dir;
}

t::CommonOptions Common(const fs::path& dir, std::vector<std::string> overrides = {}) {
  return {(dir / "config.json").string(), std::move(overrides)};
}

TEST(Cli, BuildSagSummaryAndDeterminism) {
  const fs::path dir = MakeRunDir("cli_sag");
  std::ostringstream out;
  EXPECT_EQ(t::BuildSag(Common(dir), out), 0);
  EXPECT_LE(std::stoul(Field(out.str(), "max_nodes")),
            std::stoul(Field(out.str(), "node_bound")));
  EXPECT_EQ(Field(out.str(), "node_bound"), "3");
  EXPECT_NE(out.str().find("node_count_histogram:"), std::string::npos);
  const std::string first = ReadFile(dir / "sag_cache.txt");
  ASSERT_FALSE(first.empty());
  std::ostringstream again;
  t::BuildSag(Common(dir), again);
  EXPECT_EQ(ReadFile(dir / "sag_cache.txt"), first);
  const SagCache cache = ReadSagCache(dir / "sag_cache.txt");
  EXPECT_EQ(std::to_string(cache.graphs.size()), Field(out.str(), "graphs"));
}

TEST(Cli, BuildSagWithoutExpansion) {
  const fs::path dir = MakeRunDir("cli_sag_k0");
  std::ostringstream out;
  t::BuildSag(Common(dir, {"K=0", "sag_cache=k0.txt"}), out);
  EXPECT_EQ(Field(out.str(), "max_nodes"), "1");
  for (const auto& g : ReadSagCache(dir / "k0.txt").graphs) {
    EXPECT_EQ(g.num_nodes(), 1u);
  }
}

TEST(Cli, EmbeddingProviderNeedsVectors) {
  const fs::path dir = MakeRunDir("cli_emb");
  std::ostringstream out;
  EXPECT_THROW(t::BuildSag(Common(dir, {"provider=embedding"}), out), ConfigError);
}

TEST(Cli, TrainNeedsMatchingCache) {
  const fs::path dir = MakeRunDir("cli_cache_checks");
  std::ostringstream out;
  t::TrainOptions train{Common(dir), "", ""};
  EXPECT_THROW(t::Train(train, out), ConfigError);
  t::BuildSag(Common(dir), out);
  train.common.overrides = {"M=3"};
  EXPECT_THROW(t::Train(train, out), ConfigError);
  // Without graphs no cache is needed.
  train.common.overrides = {"sa_mode=none", "sag_cache=absent.txt", "epochs=1"};
  EXPECT_EQ(t::Train(train, out), 0);
}

TEST(Cli, TrainEvaluateAndResume) {
  const fs::path dir = MakeRunDir("cli_train");
  std::ostringstream log;
  t::BuildSag(Common(dir), log);
  t::TrainOptions train{Common(dir, {"output_dir=a"}), "", (dir / "vocab.txt").string()};
  ASSERT_EQ(t::Train(train, log), 0);
  const std::string curve = ReadFile(dir / "a/loss.csv");
  auto rows = Lines(curve);
  ASSERT_GE(rows.size(), 3u);
  EXPECT_EQ(rows[0].rfind("# config_hash=", 0), 0u);
  EXPECT_EQ(rows[1], "step,epoch,loss,grad_norm");
  EXPECT_TRUE(fs::exists(dir / "a/checkpoint.bin"));
  EXPECT_TRUE(fs::exists(dir / "a/checkpoint_epoch1.bin"));
  EXPECT_TRUE(fs::exists(dir / "vocab.txt"));

  // One epoch, then resume to two: the curve matches the straight run.
  t::TrainOptions first{Common(dir, {"output_dir=b", "epochs=1"}), "", ""};
  t::Train(first, log);
  t::TrainOptions resume{Common(dir, {"output_dir=b"}), (dir / "b/checkpoint.bin").string(), ""};
  std::ostringstream resumed;
  t::Train(resume, resumed);
  EXPECT_NE(resumed.str().find("resumed from"), std::string::npos);
  EXPECT_EQ(ReadFile(dir / "b/loss.csv"), curve);
  EXPECT_EQ(ReadFile(dir / "b/checkpoint.bin"), ReadFile(dir / "a/checkpoint.bin"));

  t::EvaluateOptions eval{Common(dir, {"output_dir=a"}), (dir / "a/checkpoint.bin").string(),
                          (dir / "scores.csv").string(), "eval"};
  std::ostringstream r1, r2;
  ASSERT_EQ(t::Evaluate(eval, r1), 0);
  const std::string report = ReadFile(dir / "a/report.txt");
  t::Evaluate(eval, r2);
  EXPECT_EQ(ReadFile(dir / "a/report.txt"), report);
  EXPECT_EQ(r1.str(), report);
  for (const char* key : {"auc", "mrr", "ndcg5", "ndcg10"}) {
    const double v = std::stod(Field(report, key));
    EXPECT_GE(v, 0.0) << key;
    EXPECT_LE(v, 1.0) << key;
  }
  const std::string hash = Field(report, "config_hash");
  EXPECT_EQ(rows[0], "# config_hash=" + hash);
  EXPECT_EQ(Lines(ReadFile(dir / "scores.csv"))[0], "# config_hash=" + hash);
  EXPECT_EQ(Lines(ReadFile(dir / "a/impressions.csv"))[0], "# config_hash=" + hash);
  EXPECT_NE(ReadFile(dir / "a/report.json").find(hash), std::string::npos);

  eval.split = "train";
  std::ostringstream tr;
  EXPECT_EQ(t::Evaluate(eval, tr), 0);
  eval.split = "test";
  EXPECT_THROW(t::Evaluate(eval, tr), ConfigError);

  t::EvaluateOptions wrong{Common(dir, {"d=16"}), (dir / "a/checkpoint.bin").string(), "", "eval"};
  try {
    t::Evaluate(wrong, tr);
    FAIL() << "expected a hash error";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("config hash"), std::string::npos);
  }
  t::TrainOptions bad_resume{Common(dir, {"L=1", "sa_mode=none"}),
                             (dir / "a/checkpoint.bin").string(), ""};
  EXPECT_THROW(t::Train(bad_resume, tr), ConfigError);
}

TEST(Cli, InspectNewsGraph) {
  const fs::path dir = MakeRunDir("cli_inspect");
  std::ostringstream log;
  t::BuildSag(Common(dir), log);
  const SagCache cache = ReadSagCache(dir / "sag_cache.txt");
  const auto& g = cache.graphs.front();
  t::InspectOptions opts{Common(dir), g.root(), "", (dir / "g.dot").string()};
  std::ostringstream out;
  ASSERT_EQ(t::InspectGraph(opts, out), 0);
  const auto lines = Lines(out.str());
  EXPECT_NE(lines[0].find("(cached)"), std::string::npos);
  EXPECT_EQ(lines[1], "nodes " + std::to_string(g.num_nodes()));
  EXPECT_EQ(lines[2].rfind("  [0] hop=0 " + g.root(), 0), 0u);
  EXPECT_NE(out.str().find("\nedges " + std::to_string(g.edges.size()) + "\n"),
            std::string::npos);
  const std::string dot = ReadFile(dir / "g.dot");
  EXPECT_EQ(dot.rfind("graph sag {", 0), 0u);
  std::size_t dot_edges = 0;
  for (const auto& l : Lines(dot)) dot_edges += l.find(" -- ") != std::string::npos;
  EXPECT_EQ(dot_edges, g.edges.size());

  opts.news_id = "nope";
  EXPECT_THROW(t::InspectGraph(opts, out), LookupError);
  opts.user_id = "U1";
  EXPECT_THROW(t::InspectGraph(opts, out), ConfigError);
  opts.news_id.clear();
  opts.user_id.clear();
  EXPECT_THROW(t::InspectGraph(opts, out), ConfigError);
}

TEST(Cli, InspectUserGraph) {
  // A full history, so no placeholder topic joins the graph.
  const fs::path dir = MakeRunDir("cli_inspect_user", {"history_len=4"});
  const RunConfig config = LoadRunConfig(dir / "config.json");
  const Corpus corpus = LoadCorpus(config, true);
  const std::string user = corpus.train_impressions.front().user_id;
  t::InspectOptions opts{Common(dir), "", user, ""};
  std::ostringstream out;
  ASSERT_EQ(t::InspectGraph(opts, out), 0);
  std::set<std::string> topics;
  for (const auto& id : corpus.train_impressions.front().history) {
    if (id != kPlaceholderNewsId) topics.insert(corpus.news.Get(id).topic);
  }
  ASSERT_EQ(topics.size(), 1u);
  EXPECT_NE(out.str().find("topic_topic_edges 0\n"), std::string::npos);
  opts.user_id = "nobody";
  EXPECT_THROW(t::InspectGraph(opts, out), LookupError);
}

TEST(Cli, SweepWritesOneRowPerRun) {
  const fs::path dir = MakeRunDir("cli_sweep", {"epochs=1"});
  t::SweepOptions opts{Common(dir), {"M=1,2", "L=1"}, (dir / "sweep.csv").string()};
  std::ostringstream out;
  ASSERT_EQ(t::Sweep(opts, out), 0);
  const auto rows = Lines(ReadFile(dir / "sweep.csv"));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "M,L,config_hash,final_loss,auc,mrr,ndcg5,ndcg10,seconds");
  EXPECT_EQ(rows[1].rfind("1,1,", 0), 0u);
  EXPECT_EQ(rows[2].rfind("2,1,", 0), 0u);
  opts.vary = {"M"};
  EXPECT_THROW(t::Sweep(opts, out), ConfigError);
  opts.vary.clear();
  EXPECT_THROW(t::Sweep(opts, out), ConfigError);
}

TEST(Cli, GenerateToyWritesDataAndConfig) {
  const fs::path dir = testing::ScratchDir("cli_toy");
  std::ostringstream out;
  ASSERT_EQ(t::GenerateToy({(dir / "toy").string(), 7}, out), 0);
  for (const char* f : {"train_news.tsv", "train_behaviors.tsv", "eval_news.tsv",
                        "eval_behaviors.tsv", "config.json"}) {
    EXPECT_TRUE(fs::exists(dir / "toy" / f)) << f;
  }
  const RunConfig c = LoadRunConfig(dir / "toy/config.json");
  EXPECT_EQ(c.model.d, 32u);
  EXPECT_EQ(c.model.layers, 2u);
  EXPECT_EQ(Lines(ReadFile(dir / "toy/train_behaviors.tsv")).size(), 200u);
  EXPECT_THROW(t::GenerateToy({"", 7}, out), ConfigError);
}

#ifdef DIGAT_CLI_PATH
int RunBinary(const std::string& args) {
  const std::string cmd = std::string(DIGAT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodesByCategory) {
  const fs::path dir = MakeRunDir("cli_exit");
  const std::string cfg = (dir / "config.json").string();
  EXPECT_EQ(RunBinary("build-sag -c " + cfg), 0);
  EXPECT_EQ(RunBinary("build-sag -c " + cfg + " --set bogus=1"),
            ExitCodeFor(ErrorCategory::kConfig));
  std::ofstream(dir / "broken.txt") << "not a cache\n";
  EXPECT_EQ(RunBinary("train -c " + cfg + " --set sag_cache=broken.txt"),
            ExitCodeFor(ErrorCategory::kParse));
  EXPECT_EQ(RunBinary("inspect-graph -c " + cfg + " --news missing"),
            ExitCodeFor(ErrorCategory::kLookup));
  EXPECT_NE(RunBinary("no-such-command"), 0);
  EXPECT_NE(ExitCodeFor(ErrorCategory::kNumeric), 0);
  EXPECT_NE(ExitCodeFor(ErrorCategory::kNumeric), ExitCodeFor(ErrorCategory::kConfig));
}
#endif

}  // namespace
}  // namespace digat
