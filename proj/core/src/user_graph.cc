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

#include "digat/user_graph.h"

#include <unordered_map>

namespace digat {

std::vector<std::vector<int>> UserGraph::Adjacency() const {
  std::vector<std::vector<int>> adj(num_nodes());
  const int offset = static_cast<int>(num_news());
  auto link = [&adj](int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (const auto& [i, j] : news_news) link(int(i), int(j));
  for (const auto& [i, t] : news_topic) link(int(i), offset + int(t));
  for (const auto& [a, b] : topic_topic) link(offset + int(a), offset + int(b));
  return adj;
}

std::vector<std::vector<std::size_t>> UserGraph::TopicGroups() const {
  std::vector<std::vector<std::size_t>> groups(num_topics());
  for (std::size_t i = 0; i < topic_of.size(); ++i) {
    groups[topic_of[i]].push_back(i);
  }
  return groups;
}

UserGraph BuildUserGraph(std::span<const std::string> history_topics) {
  UserGraph g;
  std::unordered_map<std::string, std::size_t> index;
  for (const std::string& topic : history_topics) {
    auto [it, inserted] = index.emplace(topic, g.topics.size());
    if (inserted) g.topics.push_back(topic);
    g.topic_of.push_back(it->second);
  }
  const std::size_t n = g.topic_of.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (g.topic_of[i] == g.topic_of[j]) g.news_news.emplace_back(i, j);
    }
    g.news_topic.emplace_back(i, g.topic_of[i]);
  }
  for (std::size_t a = 0; a < g.topics.size(); ++a) {
    for (std::size_t b = a + 1; b < g.topics.size(); ++b) {
      g.topic_topic.emplace_back(a, b);
    }
  }
  return g;
}

UserGraph BuildUserGraph(std::span<const NewsItem* const> history) {
  std::vector<std::string> topics;
  topics.reserve(history.size());
  for (const NewsItem* item : history) topics.push_back(item->topic);
  return BuildUserGraph(topics);
}

}  // namespace digat
