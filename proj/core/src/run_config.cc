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

#include "digat/run_config.h"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "digat/errors.h"

namespace digat {

using nlohmann::ordered_json;

namespace {

ordered_json ToJson(const RunConfig& c) {
  ordered_json j;
  j["train_news"] = c.train_news;
  j["train_behaviors"] = c.train_behaviors;
  j["eval_news"] = c.eval_news;
  j["eval_behaviors"] = c.eval_behaviors;
  j["embeddings"] = c.embeddings;
  j["news_vectors"] = c.news_vectors;
  j["provider"] = std::string(ProviderTag(c.provider));
  j["sag_cache"] = c.sag_cache;
  j["output_dir"] = c.output_dir;
  const ModelConfig& m = c.model;
  j["d"] = m.d;
  j["word_dim"] = m.word_dim;
  j["title_len"] = m.title_len;
  j["history_len"] = m.history_len;
  j["heads"] = m.heads;
  j["att_hidden"] = m.att_hidden;
  j["M"] = m.m;
  j["K"] = m.k;
  j["L"] = m.layers;
  j["sa_mode"] = std::string(SaModeName(m.sa_mode));
  j["interact_news"] = m.interact_news;
  j["interact_user"] = m.interact_user;
  j["dropout"] = m.dropout;
  const TrainConfig& t = c.train;
  j["S"] = t.negatives;
  j["epochs"] = t.epochs;
  j["batch_size"] = t.batch_size;
  j["lr"] = t.learning_rate;
  j["clip_norm"] = t.clip_norm;
  j["seed"] = t.seed;
  j["deterministic"] = t.deterministic;
  j["beta1"] = t.beta1;
  j["beta2"] = t.beta2;
  j["adam_eps"] = t.adam_epsilon;
  return j;
}

[[noreturn]] void TypeError(const std::string& key, const char* expected) {
  throw ConfigError("config key '" + key + "' must be " + expected);
}

std::string GetString(const ordered_json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_string()) TypeError(key, "a string");
  return v.get<std::string>();
}

std::uint64_t GetUnsigned(const ordered_json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  TypeError(key, "a non-negative integer");
}

double GetDouble(const ordered_json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number()) TypeError(key, "a number");
  return v.get<double>();
}

bool GetBool(const ordered_json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_boolean()) TypeError(key, "true or false");
  return v.get<bool>();
}

ProviderKind ParseProvider(const std::string& name) {
  if (name == "tfidf") return ProviderKind::kTfidf;
  if (name == "embedding") return ProviderKind::kEmbedding;
  throw ConfigError("provider must be tfidf or embedding, got '" + name + "'");
}

void Require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

RunConfig FromJson(const ordered_json& j) {
  RunConfig c;
  c.train_news = GetString(j, "train_news");
  c.train_behaviors = GetString(j, "train_behaviors");
  c.eval_news = GetString(j, "eval_news");
  c.eval_behaviors = GetString(j, "eval_behaviors");
  c.embeddings = GetString(j, "embeddings");
  c.news_vectors = GetString(j, "news_vectors");
  c.provider = ParseProvider(GetString(j, "provider"));
  c.sag_cache = GetString(j, "sag_cache");
  c.output_dir = GetString(j, "output_dir");
  ModelConfig& m = c.model;
  m.d = GetUnsigned(j, "d");
  m.word_dim = GetUnsigned(j, "word_dim");
  m.title_len = GetUnsigned(j, "title_len");
  m.history_len = GetUnsigned(j, "history_len");
  m.heads = GetUnsigned(j, "heads");
  m.att_hidden = GetUnsigned(j, "att_hidden");
  m.m = static_cast<int>(GetUnsigned(j, "M"));
  m.k = static_cast<int>(GetUnsigned(j, "K"));
  m.layers = GetUnsigned(j, "L");
  m.sa_mode = ParseSaMode(GetString(j, "sa_mode"));
  m.interact_news = GetBool(j, "interact_news");
  m.interact_user = GetBool(j, "interact_user");
  m.dropout = GetDouble(j, "dropout");
  TrainConfig& t = c.train;
  t.negatives = GetUnsigned(j, "S");
  t.epochs = GetUnsigned(j, "epochs");
  t.batch_size = GetUnsigned(j, "batch_size");
  t.learning_rate = GetDouble(j, "lr");
  t.clip_norm = GetDouble(j, "clip_norm");
  t.seed = GetUnsigned(j, "seed");
  t.deterministic = GetBool(j, "deterministic");
  t.beta1 = GetDouble(j, "beta1");
  t.beta2 = GetDouble(j, "beta2");
  t.adam_epsilon = GetDouble(j, "adam_eps");

  Require(m.d >= 1 && m.word_dim >= 1, "d and word_dim must be positive");
  Require(m.heads >= 1 && m.d % m.heads == 0, "heads must divide d");
  Require(m.att_hidden >= 1, "att_hidden must be positive");
  Require(m.title_len >= 1 && m.history_len >= 1,
          "title_len and history_len must be positive");
  Require(m.m >= 1, "M must be at least 1");
  Require(m.layers >= 1, "L must be at least 1");
  Require(m.dropout >= 0.0 && m.dropout < 1.0, "dropout must lie in [0, 1)");
  Require(t.negatives >= 1, "S must be at least 1");
  Require(t.batch_size >= 1, "batch_size must be at least 1");
  Require(t.learning_rate > 0.0, "lr must be positive");
  Require(t.clip_norm > 0.0, "clip_norm must be positive");
  Require(t.beta1 >= 0.0 && t.beta1 < 1.0 && t.beta2 >= 0.0 && t.beta2 < 1.0,
          "Adam betas must lie in [0, 1)");
  Require(t.adam_epsilon > 0.0, "adam_eps must be positive");
  return c;
}

void Merge(ordered_json& base, const ordered_json& update,
           const std::string& origin) {
  for (const auto& [key, value] : update.items()) {
    if (!base.contains(key)) {
      throw ConfigError("unknown config key '" + key + "' in " + origin);
    }
    base[key] = value;
  }
}

}  // namespace

std::filesystem::path RunConfig::Resolve(const std::string& path) const {
  if (path.empty()) return {};
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

RunConfig DefaultRunConfig() { return RunConfig{}; }

RunConfig ParseRunConfig(std::string_view json_text,
                         std::span<const std::string> overrides,
                         const std::filesystem::path& base_dir) {
  ordered_json merged = ToJson(DefaultRunConfig());
  if (!json_text.empty()) {
    ordered_json file;
    try {
      file = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& err) {
      throw ConfigError(std::string("config is not valid JSON: ") + err.what());
    }
    if (!file.is_object()) throw ConfigError("config must be a JSON object");
    Merge(merged, file, "config file");
  }
  for (const std::string& entry : overrides) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("override '" + entry + "' is not key=value");
    }
    const std::string key = entry.substr(0, eq);
    const std::string text = entry.substr(eq + 1);
    ordered_json value;
    try {
      value = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error&) {
      value = text;
    }
    ordered_json single;
    single[key] = value;
    Merge(merged, single, "override");
  }
  RunConfig config = FromJson(merged);
  config.base_dir = base_dir;
  return config;
}

RunConfig LoadRunConfig(const std::filesystem::path& path,
                        std::span<const std::string> overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseRunConfig(buf.str(), overrides, path.parent_path());
}

std::string RunConfigToJson(const RunConfig& config) {
  return ToJson(config).dump(2);
}

std::uint64_t Fnv1a(std::string_view data, std::uint64_t hash) {
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t ModelHash(const RunConfig& config) {
  const ordered_json all = ToJson(config);
  ordered_json model;
  for (const char* key :
       {"d", "word_dim", "title_len", "history_len", "heads", "att_hidden", "M",
        "K", "L", "sa_mode", "interact_news", "interact_user", "provider"}) {
    model[key] = all.at(key);
  }
  return Fnv1a(model.dump());
}

}  // namespace digat
