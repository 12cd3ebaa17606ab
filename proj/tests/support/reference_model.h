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

#ifndef DIGAT_TESTS_SUPPORT_REFERENCE_MODEL_H_
#define DIGAT_TESTS_SUPPORT_REFERENCE_MODEL_H_

#include <cstddef>
#include <string>
#include <vector>

#include "digat/model.h"
#include "digat/params.h"
#include "digat/tensor.h"
#include "support/test_support.h"

namespace digat::testing {

// Plain-loop reimplementation of the context extractors and graph updates.
// Shares nothing with the library besides reading parameter values by name.
using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

Mat ToMat(const Tensor& t);
Vec ToVec(const Tensor& t);

Vec RefAttention(const Vec& query, const Mat& keys);
Vec RefNewsContext(const Mat& nodes, const ParamStore& params);
Vec RefUserContext(const Mat& news, const std::vector<std::vector<std::size_t>>& groups,
                   const Vec& news_context);

// One update over neighbor lists; `context` is ignored when !interact.
Mat RefGraphUpdate(const std::string& prefix, const Mat& h, const Vec& context,
                   const std::vector<std::vector<std::size_t>>& neighbors,
                   bool interact, const ParamStore& params);

struct RefGraphs {
  std::vector<std::vector<std::size_t>> news_neighbors;
  bool news_static = false;
  std::vector<std::vector<std::size_t>> user_neighbors;
  std::vector<std::vector<std::size_t>> groups;
  std::size_t num_news = 0;
};

struct RefOutput {
  Vec news_repr, user_repr;
};

RefOutput RefDualInteraction(const Mat& news_nodes, const Mat& user_nodes,
                             const RefGraphs& graphs, std::size_t layers,
                             bool interact_news, bool interact_user,
                             const ParamStore& params);

// Neighbor lists from an adjacency list, adding self for isolated nodes.
std::vector<std::vector<std::size_t>> NeighborsWithSelfLoops(
    const std::vector<std::vector<int>>& adjacency);

// The reference run on `out`'s layer-0 states for a MiniWorld candidate.
RefOutput RefForWorld(const MiniWorld& world, const CandidateGraph& candidate,
                      const DualOutput& out);

}  // namespace digat::testing

#endif  // DIGAT_TESTS_SUPPORT_REFERENCE_MODEL_H_
