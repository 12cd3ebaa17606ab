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

#include "commands.h"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "digat/checkpoint.h"
#include "digat/errors.h"
#include "digat/evaluator.h"
#include "digat/pipeline.h"
#include "digat/run_config.h"
#include "digat/sag.h"
#include "digat/synthetic.h"
#include "digat/trainer.h"
#include "digat/user_graph.h"

namespace digat::tools {

namespace {

namespace fs = std::filesystem;

std::string Hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

RunConfig Load(const CommonOptions& options) {
  if (options.config.empty()) {
    return ParseRunConfig("", options.overrides, fs::current_path());
  }
  return LoadRunConfig(options.config, options.overrides);
}

fs::path OutputDir(const RunConfig& config) {
  fs::path dir = config.Resolve(config.output_dir);
  fs::create_directories(dir);
  return dir;
}

std::ofstream OpenOut(const fs::path& path,
                      std::ios::openmode mode = std::ios::trunc) {
  std::ofstream out(path, std::ios::binary | mode);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

SagCache ReadCacheFor(const RunConfig& config) {
  const fs::path path = config.Resolve(config.sag_cache);
  if (!fs::exists(path)) {
    throw ConfigError("SAG cache " + path.string() +
                      " is missing; run build-sag first");
  }
  return ReadSagCache(path);
}

void RequireCoverage(const SagCache& cache,
                     const std::vector<ImpressionRecord>& impressions) {
  std::unordered_set<std::string> roots;
  for (const SemanticAugmentedGraph& g : cache.graphs) roots.insert(g.root());
  for (const ImpressionRecord& r : impressions) {
    for (const Candidate& c : r.candidates) {
      if (!roots.count(c.news_id)) {
        throw ConfigError("SAG cache has no graph for candidate " + c.news_id +
                          "; rerun build-sag with this config");
      }
    }
  }
}

// Provider and graph source for the configured SA mode.
struct GraphSetup {
  std::unique_ptr<SimilarityProvider> provider;
  SagCache cache;
  std::unique_ptr<CandidateGraphSource> source;
};

GraphSetup SetupGraphs(const RunConfig& config, const Corpus& corpus,
                       const std::vector<ImpressionRecord>& impressions) {
  GraphSetup s;
  switch (config.model.sa_mode) {
    case SaMode::kGraph:
      s.cache = ReadCacheFor(config);
      s.source = MakeGraphSource(config, corpus, nullptr, &s.cache);
      RequireCoverage(s.cache, impressions);
      break;
    case SaMode::kSeq:
      s.provider = MakeProvider(config, corpus);
      s.source = MakeGraphSource(config, corpus, s.provider.get(), nullptr);
      break;
    case SaMode::kNone:
      s.source = MakeGraphSource(config, corpus, nullptr, nullptr);
      break;
  }
  return s;
}

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

int BuildSag(const CommonOptions& options, std::ostream& out) {
  const RunConfig config = Load(options);
  const Corpus corpus = LoadCorpus(config, true);
  auto provider = MakeProvider(config, corpus);
  SagBuildStats stats;
  const std::uint64_t hash = SagConfigHash(config);
  SagCache cache = BuildSagCache(corpus.CandidateIds(true), *provider,
                                 config.model.m, config.model.k, hash, &stats);
  const fs::path path = config.Resolve(config.sag_cache);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  WriteSagCache(path, cache);
  out << "sag_cache=" << path.string() << '\n'
      << "config_hash=" << Hex(hash) << '\n'
      << "provider=" << provider->tag() << '\n'
      << "M=" << config.model.m << "\nK=" << config.model.k << '\n'
      << "graphs=" << cache.graphs.size() << '\n'
      << "max_nodes=" << stats.max_nodes << '\n'
      << "node_bound=" << MaxSagNodes(config.model.m, config.model.k) << '\n'
      << "max_hop=" << stats.max_hop << '\n'
      << "seconds=" << Num(stats.seconds) << '\n';
  out << "node_count_histogram:\n";
  for (const auto& [nodes, count] : stats.node_histogram) {
    out << "  " << nodes << " nodes: " << count << '\n';
  }
  return 0;
}

int Train(const TrainOptions& options, std::ostream& out) {
  const RunConfig config = Load(options.common);
  const Corpus corpus = LoadCorpus(config, false);
  if (corpus.train_impressions.empty()) {
    throw ConfigError("train_behaviors holds no impressions");
  }
  if (!options.dump_vocab.empty()) corpus.vocab.Write(options.dump_vocab);
  GraphSetup graphs = SetupGraphs(config, corpus, corpus.train_impressions);
  auto model = MakeModel(config, corpus);
  Trainer trainer(*model, config.train);
  const std::uint64_t hash = ModelHash(config);
  if (!options.resume.empty()) {
    Checkpoint ckpt = LoadCheckpoint(options.resume);
    if (ckpt.header.config_hash != hash) {
      throw ConfigError("checkpoint " + options.resume + " has config hash " +
                        Hex(ckpt.header.config_hash) + ", config gives " +
                        Hex(hash));
    }
    trainer.Restore(ckpt);
    out << "resumed from " << options.resume << " at step " << trainer.step()
        << ", epoch " << trainer.epoch() << '\n';
  }
  const fs::path dir = OutputDir(config);
  const fs::path curve = dir / "loss.csv";
  const bool append = !options.resume.empty() && fs::exists(curve);
  std::ofstream csv = OpenOut(curve, append ? std::ios::app : std::ios::trunc);
  if (!append) {
    csv << "# config_hash=" << Hex(hash) << '\n'
        << "step,epoch,loss,grad_norm\n";
  }
  TrainingData data{&corpus.news, corpus.train_impressions, graphs.source.get()};
  while (trainer.epoch() < config.train.epochs) {
    EpochRecord rec = trainer.RunEpoch(data, [&](const StepRecord& s) {
      csv << s.step << ',' << s.epoch << ',' << Num(s.loss) << ','
          << Num(s.grad_norm) << '\n';
    });
    csv.flush();
    const CheckpointHeader header = trainer.Header(hash);
    const fs::path ckpt = dir / ("checkpoint_epoch" + std::to_string(rec.epoch) + ".bin");
    SaveCheckpoint(ckpt, header, model->params(), &trainer.optimizer());
    SaveCheckpoint(dir / "checkpoint.bin", header, model->params(),
                   &trainer.optimizer());
    out << "epoch " << rec.epoch << " examples=" << rec.examples
        << " mean_loss=" << Num(rec.mean_loss) << " step=" << trainer.step()
        << '\n';
  }
  out << "checkpoint=" << (dir / "checkpoint.bin").string() << '\n'
      << "loss_curve=" << curve.string() << '\n';
  return 0;
}

int Evaluate(const EvaluateOptions& options, std::ostream& out) {
  const RunConfig config = Load(options.common);
  if (options.split != "eval" && options.split != "train") {
    throw ConfigError("split must be eval or train");
  }
  const Corpus corpus = LoadCorpus(config, options.split == "eval");
  const auto& impressions = options.split == "eval" ? corpus.eval_impressions
                                                    : corpus.train_impressions;
  if (impressions.empty()) {
    throw ConfigError("no impressions in the " + options.split + " split");
  }
  const std::uint64_t hash = ModelHash(config);
  Checkpoint ckpt = LoadCheckpoint(options.checkpoint);
  if (ckpt.header.config_hash != hash) {
    throw ConfigError("checkpoint " + options.checkpoint +
                      " is incompatible: config hash " +
                      Hex(ckpt.header.config_hash) + " vs " + Hex(hash));
  }
  GraphSetup graphs = SetupGraphs(config, corpus, impressions);
  auto model = MakeModel(config, corpus);
  RestoreParams(ckpt, model->params());
  TrainingData data{&corpus.news, impressions, graphs.source.get()};
  EvalReport report = digat::Evaluate(*model, data);

  const fs::path dir = OutputDir(config);
  {
    auto f = OpenOut(dir / "report.txt");
    WriteReportText(f, report, hash);
  }
  {
    auto f = OpenOut(dir / "report.json");
    WriteReportJson(f, report, hash);
  }
  {
    auto f = OpenOut(dir / "impressions.csv");
    f << "# config_hash=" << Hex(hash) << '\n';
    WriteImpressionCsv(f, report);
  }
  if (!options.dump_scores.empty()) {
    auto f = OpenOut(options.dump_scores);
    f << "# config_hash=" << Hex(hash) << '\n';
    WriteScoresCsv(f, report);
  }
  WriteReportText(out, report, hash);
  return 0;
}

int InspectGraph(const InspectOptions& options, std::ostream& out) {
  if (options.news_id.empty() == options.user_id.empty()) {
    throw ConfigError("inspect-graph needs exactly one of --news or --user");
  }
  const RunConfig config = Load(options.common);
  const Corpus corpus = LoadCorpus(config, true);
  std::ostringstream dot;

  if (!options.news_id.empty()) {
    const NewsItem& root = corpus.news.Get(options.news_id);
    SemanticAugmentedGraph g;
    bool found = false;
    const fs::path cache_path = config.Resolve(config.sag_cache);
    if (fs::exists(cache_path)) {
      for (auto& cached : ReadSagCache(cache_path).graphs) {
        if (cached.root() == root.news_id) {
          g = std::move(cached);
          found = true;
          break;
        }
      }
    }
    if (!found) {
      auto provider = MakeProvider(config, corpus);
      g = digat::BuildSag(root.news_id, *provider, config.model.m,
                          config.model.k);
    }
    out << "graph " << g.root() << " M=" << g.m << " K=" << g.k
        << " provider=" << g.provider_tag << (found ? " (cached)" : " (built)")
        << '\n';
    out << "nodes " << g.num_nodes() << '\n';
    dot << "graph sag {\n";
    for (std::size_t i = 0; i < g.num_nodes(); ++i) {
      const NewsItem& item = corpus.news.Get(g.nodes[i]);
      out << "  [" << i << "] hop=" << g.hops[i] << ' ' << g.nodes[i] << " ("
          << item.topic << ") " << item.title << '\n';
      dot << "  n" << i << " [label=" << Quote(g.nodes[i] + " hop " +
                                               std::to_string(g.hops[i]))
          << (i == 0 ? ", shape=doublecircle" : "") << "];\n";
    }
    out << "edges " << g.edges.size() << '\n';
    for (const auto& [a, b] : g.edges) {
      out << "  " << a << " -- " << b << "  (" << g.nodes[a] << " -- "
          << g.nodes[b] << ")\n";
      dot << "  n" << a << " -- n" << b << ";\n";
    }
    dot << "}\n";
  } else {
    const ImpressionRecord* latest = nullptr;
    for (const auto* split : {&corpus.train_impressions, &corpus.eval_impressions}) {
      for (const ImpressionRecord& r : *split) {
        if (r.user_id == options.user_id) latest = &r;
      }
    }
    if (!latest) throw LookupError("no impression for user " + options.user_id);
    std::vector<const NewsItem*> history = ResolveHistory(*latest, corpus.news);
    UserGraph g = BuildUserGraph(history);
    const std::size_t n = g.num_news();
    out << "user " << options.user_id << " (impression " << latest->impression_id
        << ")\n";
    out << "news_nodes " << n << '\n';
    dot << "graph user {\n";
    for (std::size_t i = 0; i < n; ++i) {
      out << "  [" << i << "] " << history[i]->news_id << " topic="
          << g.topics[g.topic_of[i]] << '\n';
      dot << "  n" << i << " [label=" << Quote(history[i]->news_id) << "];\n";
    }
    out << "topic_nodes " << g.num_topics() << '\n';
    for (std::size_t t = 0; t < g.num_topics(); ++t) {
      out << "  [" << n + t << "] " << g.topics[t] << '\n';
      dot << "  t" << t << " [label=" << Quote(g.topics[t])
          << ", shape=box];\n";
    }
    out << "news_news_edges " << g.news_news.size() << '\n';
    for (const auto& [a, b] : g.news_news) {
      out << "  " << a << " -- " << b << '\n';
      dot << "  n" << a << " -- n" << b << ";\n";
    }
    out << "news_topic_edges " << g.news_topic.size() << '\n';
    for (const auto& [a, t] : g.news_topic) {
      out << "  " << a << " -- " << n + t << '\n';
      dot << "  n" << a << " -- t" << t << " [style=dashed];\n";
    }
    out << "topic_topic_edges " << g.topic_topic.size() << '\n';
    for (const auto& [a, b] : g.topic_topic) {
      out << "  " << n + a << " -- " << n + b << '\n';
      dot << "  t" << a << " -- t" << b << " [style=bold];\n";
    }
    dot << "}\n";
  }
  if (!options.dot.empty()) {
    auto f = OpenOut(options.dot);
    f << dot.str();
    out << "dot=" << options.dot << '\n';
  }
  return 0;
}

int Sweep(const SweepOptions& options, std::ostream& out) {
  struct Axis {
    std::string key;
    std::vector<std::string> values;
  };
  std::vector<Axis> axes;
  for (const std::string& entry : options.vary) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size()) {
      throw ConfigError("--vary expects key=v1,v2,..., got '" + entry + "'");
    }
    Axis axis{entry.substr(0, eq), {}};
    std::stringstream values(entry.substr(eq + 1));
    for (std::string v; std::getline(values, v, ',');) {
      if (!v.empty()) axis.values.push_back(v);
    }
    axes.push_back(std::move(axis));
  }
  if (axes.empty()) throw ConfigError("sweep needs at least one --vary");

  std::ofstream file;
  std::ostream* csv = &out;
  if (!options.out.empty()) {
    file = OpenOut(options.out);
    csv = &file;
  }
  for (const Axis& a : axes) *csv << a.key << ',';
  *csv << "config_hash,final_loss,auc,mrr,ndcg5,ndcg10,seconds\n";

  std::vector<std::size_t> pos(axes.size(), 0);
  while (true) {
    CommonOptions run = options.common;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      run.overrides.push_back(axes[i].key + "=" + axes[i].values[pos[i]]);
    }
    const auto start = std::chrono::steady_clock::now();
    const RunConfig config = Load(run);
    const Corpus corpus = LoadCorpus(config, true);
    const auto& eval_split = corpus.eval_impressions.empty()
                                 ? corpus.train_impressions
                                 : corpus.eval_impressions;
    std::unique_ptr<SimilarityProvider> provider;
    if (config.model.sa_mode != SaMode::kNone) {
      provider = MakeProvider(config, corpus);
    }
    auto source = MakeGraphSource(config, corpus, provider.get(), nullptr);
    auto model = MakeModel(config, corpus);
    Trainer trainer(*model, config.train);
    TrainingData train{&corpus.news, corpus.train_impressions, source.get()};
    double final_loss = 0.0;
    for (std::size_t e = 0; e < config.train.epochs; ++e) {
      final_loss = trainer.RunEpoch(train).mean_loss;
    }
    EvalReport report =
        digat::Evaluate(*model, {&corpus.news, eval_split, source.get()});
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    for (std::size_t i = 0; i < axes.size(); ++i) {
      *csv << axes[i].values[pos[i]] << ',';
    }
    *csv << Hex(ModelHash(config)) << ',' << Num(final_loss) << ','
         << Num(report.auc) << ',' << Num(report.mrr) << ','
         << Num(report.ndcg5) << ',' << Num(report.ndcg10) << ','
         << Num(seconds) << '\n';
    csv->flush();

    std::size_t i = 0;
    while (i < axes.size() && ++pos[i] == axes[i].values.size()) pos[i++] = 0;
    if (i == axes.size()) break;
  }
  return 0;
}

int GenerateToy(const ToyCommandOptions& options, std::ostream& out) {
  if (options.out_dir.empty()) throw ConfigError("generate-toy needs --out");
  ToyOptions toy;
  toy.seed = options.seed;
  const fs::path dir(options.out_dir);
  WriteToyData(GenerateToyData(toy), dir);
  const std::vector<std::string> settings = {
      "train_news=train_news.tsv", "train_behaviors=train_behaviors.tsv",
      "eval_news=eval_news.tsv",   "eval_behaviors=eval_behaviors.tsv",
      "d=32",  "word_dim=32", "title_len=10", "history_len=10",
      "att_hidden=32", "M=2", "K=1", "L=2", "epochs=10", "batch_size=16",
      "lr=0.001"};
  RunConfig config = ParseRunConfig("", settings);
  auto f = OpenOut(dir / "config.json");
  f << RunConfigToJson(config) << '\n';
  out << "wrote toy dataset and config.json to " << dir.string() << '\n';
  return 0;
}

}  // namespace digat::tools
