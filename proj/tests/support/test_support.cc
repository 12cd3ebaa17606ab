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

#include "test_support.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <unistd.h>

#include "digat/random.h"

namespace digat::testing {

GradCheckReport GradCheck(const std::function<Tensor()>& loss,
                          const std::vector<NamedParam>& leaves,
                          const GradCheckOptions& options) {
  for (const auto& leaf : leaves) {
    Tensor t = leaf.value;
    t.ZeroGrad();
  }
  {
    GradientTape tape;
    loss().Backward();
  }
  GradCheckReport report;
  Rng rng(options.seed);
  for (const auto& leaf : leaves) {
    Tensor t = leaf.value;
    std::vector<double> analytic(t.size(), 0.0);
    if (t.has_grad()) {
      auto g = t.grad();
      analytic.assign(g.begin(), g.end());
    }
    std::vector<std::size_t> entries(t.size());
    std::iota(entries.begin(), entries.end(), 0);
    if (options.max_entries_per_leaf &&
        entries.size() > options.max_entries_per_leaf) {
      rng.Shuffle(entries.begin(), entries.end());
      entries.resize(options.max_entries_per_leaf);
    }
    auto data = t.mutable_data();
    auto central = [&](std::size_t i, double eps, double* up_out, double* down_out) {
      const double x = data[i];
      data[i] = x + eps;
      const double up = loss().item();
      data[i] = x - eps;
      const double down = loss().item();
      data[i] = x;
      if (up_out) *up_out = up;
      if (down_out) *down_out = down;
      return (up - down) / (2.0 * eps);
    };
    auto within = [&](double numeric, double a) {
      const double err = std::abs(numeric - a);
      const double scale = std::max(std::abs(numeric), std::abs(a));
      return err <= options.abs_floor || err < options.rel_tol * scale;
    };
    for (std::size_t i : entries) {
      double up = 0.0, down = 0.0;
      const double numeric = central(i, options.eps, &up, &down);
      const double err = std::abs(numeric - analytic[i]);
      const double scale = std::max(std::abs(numeric), std::abs(analytic[i]));
      const double rel = scale > 0.0 ? err / scale : 0.0;
      ++report.checked;
      report.worst_abs = std::max(report.worst_abs, err);
      bool pass = within(numeric, analytic[i]);
      if (!pass) {
        const double base = loss().item();
        const double right = (up - base) / options.eps;
        const double left = (base - down) / options.eps;
        if (std::abs(right - left) >= err &&
            within(central(i, options.eps / 100.0, nullptr, nullptr), analytic[i])) {
          ++report.kinks;
          continue;
        }
      }
      std::string where = leaf.name + "[" + std::to_string(i) +
                          "] analytic=" + std::to_string(analytic[i]) +
                          " numeric=" + std::to_string(numeric);
      if (!pass) {
        ++report.failed;
        if (report.failures.size() < 20) report.failures.push_back(where);
      }
      const double badness = err <= options.abs_floor ? 0.0 : rel;
      if (badness > report.worst_error) {
        report.worst_error = badness;
        report.worst = std::move(where);
      }
    }
  }
  return report;
}

CandidateGraph PermuteCandidate(const CandidateGraph& g, Rng& rng) {
  const std::size_t n = g.nodes.size();
  std::vector<std::size_t> perm(n);  // new position of old node i
  std::iota(perm.begin(), perm.end(), 0);
  rng.Shuffle(perm.begin() + 1, perm.end());
  CandidateGraph out = g;
  out.adjacency.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    out.nodes[perm[i]] = g.nodes[i];
    for (int j : g.adjacency[i]) out.adjacency[perm[i]].push_back(static_cast<int>(perm[j]));
  }
  for (auto& list : out.adjacency) rng.Shuffle(list.begin(), list.end());
  return out;
}

std::vector<NamedParam> AllParams(const ParamStore& params) {
  return {params.begin(), params.end()};
}

std::filesystem::path ScratchDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("digat_test_" + std::to_string(::getpid())) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

ToyOptions SmallToyOptions() {
  ToyOptions o;
  o.topics = 3;
  o.words = 60;
  o.shared_words = 12;
  o.title_words = 5;
  o.topic_words_per_title = 3;
  o.train_news = 24;
  o.heldout_news = 9;
  o.users = 6;
  o.history = 4;
  o.train_impressions = 12;
  o.heldout_impressions = 6;
  o.negatives_min = 2;
  o.negatives_max = 4;
  o.seed = 11;
  return o;
}

RunConfig ToyRunConfig(const std::filesystem::path& dir,
                        const std::vector<std::string>& overrides) {
  std::vector<std::string> settings = {
      "train_news=train_news.tsv", "train_behaviors=train_behaviors.tsv",
      "eval_news=eval_news.tsv",   "eval_behaviors=eval_behaviors.tsv",
      "d=32",  "word_dim=32", "title_len=10", "history_len=10",
      "att_hidden=32", "M=2", "K=1", "L=2", "epochs=10", "batch_size=16",
      "lr=0.001"};
  settings.insert(settings.end(), overrides.begin(), overrides.end());
  return ParseRunConfig("", settings, dir);
}

ToyWorld MakeToyWorld(const std::string& name, const ToyOptions& toy,
                      const std::vector<std::string>& overrides) {
  ToyWorld w;
  w.dir = ScratchDir(name);
  WriteToyData(GenerateToyData(toy), w.dir);
  w.config = ToyRunConfig(w.dir, overrides);
  w.corpus = LoadCorpus(w.config, true);
  return w;
}

ToyPipeline MakeToyPipeline(const ToyWorld& world) {
  ToyPipeline p;
  const RunConfig& config = world.config;
  p.provider = MakeProvider(config, world.corpus);
  p.cache = BuildSagCache(world.corpus.CandidateIds(true), *p.provider,
                          config.model.m, config.model.k, SagConfigHash(config));
  p.graphs = MakeGraphSource(config, world.corpus, nullptr, &p.cache);
  p.model = MakeModel(config, world.corpus);
  p.train = {&world.corpus.news, world.corpus.train_impressions, p.graphs.get()};
  p.eval = {&world.corpus.news, world.corpus.eval_impressions, p.graphs.get()};
  return p;
}

ModelConfig MiniConfig() {
  ModelConfig c;
  c.d = 16;
  c.word_dim = 8;
  c.title_len = 6;
  c.history_len = 6;
  c.heads = 8;
  c.att_hidden = 8;
  c.m = 2;
  c.k = 1;
  c.layers = 2;
  c.dropout = 0.0;
  return c;
}

std::unique_ptr<MiniWorld> MakeMiniWorld(const ModelConfig& config,
                                         std::uint64_t seed) {
  auto w = std::make_unique<MiniWorld>();
  w->config = config;
  w->store = NewsStore(config.title_len);
  Rng rng(seed);
  const std::vector<std::string> topics = {"sports", "finance", "music"};
  const std::size_t vocab = 30;
  std::vector<NewsItem> corpus;
  for (std::size_t i = 0; i < 24; ++i) {
    NewsItem item;
    item.news_id = "N" + std::to_string(i);
    item.topic = topics[i % 3];
    const std::size_t len = 2 + rng.UniformInt(config.title_len - 1);
    for (std::size_t t = 0; t < config.title_len; ++t) {
      item.title_tokens.push_back(
          t < len ? static_cast<int>(2 + (i % 3) * 9 + rng.UniformInt(10)) : kPadTokenId);
    }
    w->store.Add(item);
    w->news_ids.push_back(item.news_id);
    corpus.push_back(std::move(item));
  }
  w->provider = std::make_unique<TfidfProvider>(TfidfProvider::Build(corpus));
  w->graphs = std::make_unique<CandidateGraphSource>(config.sa_mode, w->store,
                                                     config.m, config.k);
  w->graphs->set_provider(w->provider.get());
  Rng emb(DeriveSeed(seed, 1));
  std::vector<double> table(vocab * config.word_dim);
  for (std::size_t i = config.word_dim; i < table.size(); ++i) {
    table[i] = emb.Uniform(-0.5, 0.5);
  }
  w->model = std::make_unique<DigatModel>(
      config, topics, Tensor::FromData({vocab, config.word_dim}, std::move(table)),
      seed);
  const std::vector<std::string> history = {"N0", "N3", "N1", "N7", "N5"};
  for (std::size_t i = 0; i + history.size() < config.history_len; ++i) {
    w->history.push_back(&w->store.placeholder());
  }
  for (std::size_t i = 0; i < history.size() && i < config.history_len; ++i) {
    w->history.push_back(&w->store.Get(history[i]));
  }
  return w;
}

Tensor RandomTensor(Shape shape, std::uint64_t seed, double lo, double hi,
                    bool requires_grad) {
  Rng rng(seed);
  std::vector<double> data(ShapeSize(shape));
  for (double& v : data) v = rng.Uniform(lo, hi);
  return Tensor::FromData(std::move(shape), std::move(data), requires_grad);
}

bool BitEqual(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() &&
         (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

double MaxAbsDiff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace digat::testing
