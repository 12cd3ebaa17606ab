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

#include "digat/synthetic.h"

#include <algorithm>
#include <fstream>

#include "digat/errors.h"
#include "digat/random.h"

namespace digat {

namespace {

constexpr const char* kTopicNames[] = {"sports",  "finance", "health",
                                       "travel",  "music",   "science",
                                       "weather", "food"};

struct ToyNews {
  std::string id;
  std::size_t topic;
};

std::string NewsLine(const ToyNews& news, const std::string& title) {
  const std::string topic = kTopicNames[news.topic];
  return news.id + '\t' + topic + '\t' + topic + "_general\t" + title +
         "\t\thttps://example.org/" + news.id + "\t[]\t[]";
}

template <typename T>
const T& Pick(const std::vector<T>& pool, Rng& rng) {
  return pool[rng.UniformInt(pool.size())];
}

// Draws without replacement, reshuffling once the pool is used up, so every
// word shows up as soon as enough titles are written.
class Deck {
 public:
  explicit Deck(std::vector<std::string> words) : words_(std::move(words)) {}

  const std::string& Draw(Rng& rng) {
    if (next_ == 0) rng.Shuffle(words_.begin(), words_.end());
    const std::string& w = words_[next_];
    next_ = (next_ + 1) % words_.size();
    return w;
  }

 private:
  std::vector<std::string> words_;
  std::size_t next_ = 0;
};

}  // namespace

ToyData GenerateToyData(const ToyOptions& o) {
  if (o.topics < 2 || o.topics > std::size(kTopicNames)) {
    throw ConfigError("toy data supports 2 to 8 topics");
  }
  if (o.shared_words >= o.words || o.topic_words_per_title > o.title_words ||
      o.negatives_min < 1 || o.negatives_min > o.negatives_max ||
      o.history < 1 || o.users < o.topics ||
      o.words - o.shared_words < o.topics || o.shared_words < 1) {
    throw ConfigError("inconsistent toy data options");
  }
  Rng rng(o.seed);
  const std::size_t per_topic = (o.words - o.shared_words) / o.topics;
  std::vector<Deck> topic_words;
  std::size_t next_word = 0;
  for (std::size_t t = 0; t < o.topics; ++t) {
    std::vector<std::string> words;
    for (std::size_t i = 0; i < per_topic; ++i) {
      words.push_back("w" + std::to_string(next_word++));
    }
    topic_words.emplace_back(std::move(words));
  }
  std::vector<std::string> shared_words;
  while (next_word < o.words) shared_words.push_back("w" + std::to_string(next_word++));
  Deck shared(std::move(shared_words));

  auto title = [&](std::size_t topic) {
    std::vector<std::string> words;
    for (std::size_t i = 0; i < o.title_words; ++i) {
      words.push_back(i < o.topic_words_per_title ? topic_words[topic].Draw(rng)
                                                  : shared.Draw(rng));
    }
    rng.Shuffle(words.begin(), words.end());
    std::string out;
    for (const std::string& w : words) {
      if (!out.empty()) out += ' ';
      out += w;
    }
    return out;
  };

  ToyData data;
  // Per split, news ids grouped by topic.
  auto make_news = [&](std::size_t count, const std::string& prefix,
                       std::vector<std::string>& lines) {
    std::vector<std::vector<std::string>> by_topic(o.topics);
    for (std::size_t i = 0; i < count; ++i) {
      ToyNews news{prefix + std::to_string(i + 1), i % o.topics};
      lines.push_back(NewsLine(news, title(news.topic)));
      by_topic[news.topic].push_back(news.id);
    }
    return by_topic;
  };
  const auto train_by_topic = make_news(o.train_news, "N", data.train_news);
  const auto heldout_by_topic = make_news(o.heldout_news, "T", data.heldout_news);

  struct User {
    std::string id;
    std::size_t topic;
    std::vector<std::string> history;
  };
  std::vector<User> users;
  for (std::size_t u = 0; u < o.users; ++u) {
    User user{"U" + std::to_string(u + 1), u % o.topics, {}};
    for (std::size_t i = 0; i < o.history; ++i) {
      user.history.push_back(Pick(train_by_topic[user.topic], rng));
    }
    users.push_back(std::move(user));
  }

  auto make_impressions = [&](std::size_t count, const std::string& prefix,
                              const std::vector<std::vector<std::string>>& pool,
                              std::vector<std::string>& lines) {
    for (std::size_t i = 0; i < count; ++i) {
      const User& user = users[rng.UniformInt(users.size())];
      std::vector<std::pair<std::string, int>> shown;
      const std::size_t clicks = 1 + rng.UniformInt(2);
      for (std::size_t c = 0; c < clicks; ++c) {
        shown.emplace_back(Pick(pool[user.topic], rng), 1);
      }
      const std::size_t skips =
          o.negatives_min + rng.UniformInt(o.negatives_max - o.negatives_min + 1);
      for (std::size_t c = 0; c < skips; ++c) {
        std::size_t topic = rng.UniformInt(o.topics - 1);
        if (topic >= user.topic) ++topic;
        shown.emplace_back(Pick(pool[topic], rng), 0);
      }
      rng.Shuffle(shown.begin(), shown.end());
      std::string history, impressions;
      for (const std::string& id : user.history) {
        if (!history.empty()) history += ' ';
        history += id;
      }
      for (const auto& [id, label] : shown) {
        if (!impressions.empty()) impressions += ' ';
        impressions += id + '-' + std::to_string(label);
      }
      lines.push_back(prefix + std::to_string(i + 1) + '\t' + user.id +
                      "\t11/15/2019 8:00:00 AM\t" + history + '\t' +
                      impressions);
    }
  };
  make_impressions(o.train_impressions, "", train_by_topic,
                   data.train_behaviors);
  make_impressions(o.heldout_impressions, "H", heldout_by_topic,
                   data.heldout_behaviors);
  return data;
}

void WriteToyData(const ToyData& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&dir](const char* name, const std::vector<std::string>& lines) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + (dir / name).string());
    for (const std::string& line : lines) out << line << '\n';
  };
  write("train_news.tsv", data.train_news);
  write("train_behaviors.tsv", data.train_behaviors);
  write("eval_news.tsv", data.heldout_news);
  write("eval_behaviors.tsv", data.heldout_behaviors);
}

}  // namespace digat
