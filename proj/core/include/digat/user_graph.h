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

#ifndef DIGAT_USER_GRAPH_H_
#define DIGAT_USER_GRAPH_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "digat/mind.h"

namespace digat {

// Heterogeneous graph over a user's history. Node indices: news slots
// 0..|H|-1 in history order, then topic nodes |H|..|H|+|t|-1 in order of
// first appearance.
struct UserGraph {
  std::vector<std::string> topics;
  // Per history slot, its index into `topics`.
  std::vector<std::size_t> topic_of;
  // Pairs of news slots sharing a topic, (i, j) with i < j.
  std::vector<std::pair<std::size_t, std::size_t>> news_news;
  // (news slot, topic index).
  std::vector<std::pair<std::size_t, std::size_t>> news_topic;
  // (topic index, topic index) with a < b.
  std::vector<std::pair<std::size_t, std::size_t>> topic_topic;

  std::size_t num_news() const { return topic_of.size(); }
  std::size_t num_topics() const { return topics.size(); }
  std::size_t num_nodes() const { return num_news() + num_topics(); }

  // Untyped neighbor lists over all three edge sets.
  std::vector<std::vector<int>> Adjacency() const;
  // News slots per topic, in history order.
  std::vector<std::vector<std::size_t>> TopicGroups() const;
};

UserGraph BuildUserGraph(std::span<const std::string> history_topics);
UserGraph BuildUserGraph(std::span<const NewsItem* const> history);

}  // namespace digat

#endif  // DIGAT_USER_GRAPH_H_
