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

#include "reference_model.h"

#include <algorithm>
#include <cmath>

#include "digat/user_graph.h"

namespace digat::testing {

namespace {

Mat Param(const ParamStore& params, const std::string& name) {
  const Tensor& t = params.Get(name);
  if (t.rank() == 1) return {ToVec(t)};
  return ToMat(t);
}

Vec ParamVec(const ParamStore& params, const std::string& name) {
  return ToVec(params.Get(name));
}

// Row vector times matrix.
Vec VecMat(const Vec& x, const Mat& w) {
  Vec out(w[0].size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += x[i] * w[i][j];
  }
  return out;
}

double DotV(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec SoftmaxV(const Vec& x) {
  const double m = *std::max_element(x.begin(), x.end());
  Vec e(x.size());
  double z = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) z += e[i] = std::exp(x[i] - m);
  for (double& v : e) v /= z;
  return e;
}

Vec Combine(const Vec& weights, const Mat& rows) {
  Vec out(rows[0].size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += weights[i] * rows[i][j];
  }
  return out;
}

Vec Join(std::initializer_list<const Vec*> parts) {
  Vec out;
  for (const Vec* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

}  // namespace

Mat ToMat(const Tensor& t) {
  Mat m(t.rows(), Vec(t.cols()));
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.cols(); ++c) m[r][c] = t.at(r, c);
  }
  return m;
}

Vec ToVec(const Tensor& t) { return t.ToVector(); }

Vec RefAttention(const Vec& query, const Mat& keys) {
  Vec scores;
  const double scale = std::sqrt(static_cast<double>(query.size()));
  for (const Vec& k : keys) scores.push_back(DotV(query, k) / scale);
  return Combine(SoftmaxV(scores), keys);
}

Vec RefNewsContext(const Mat& nodes, const ParamStore& params) {
  const Vec& root = nodes[0];
  if (nodes.size() == 1) return root;
  const std::size_t d = root.size();
  Mat rest(nodes.begin() + 1, nodes.end());
  Vec q = VecMat(root, Param(params, "news_ctx.wq"));
  Mat wk = Param(params, "news_ctx.wk");
  Vec scores;
  for (const Vec& r : rest) {
    scores.push_back(DotV(q, VecMat(r, wk)) / std::sqrt(static_cast<double>(d)));
  }
  Vec global = Combine(SoftmaxV(scores), rest);
  Vec pre = VecMat(Join({&root, &global}), Param(params, "news_ctx.gate.w"));
  Vec b = ParamVec(params, "news_ctx.gate.b");
  Vec c(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double g = 1.0 / (1.0 + std::exp(-(pre[i] + b[i])));
    c[i] = g * root[i] + (1.0 - g) * global[i];
  }
  return c;
}

Vec RefUserContext(const Mat& news, const std::vector<std::vector<std::size_t>>& groups,
                   const Vec& news_context) {
  Mat topics;
  for (const auto& group : groups) {
    Mat members;
    for (std::size_t i : group) members.push_back(news[i]);
    topics.push_back(RefAttention(news_context, members));
  }
  return RefAttention(news_context, topics);
}

Mat RefGraphUpdate(const std::string& prefix, const Mat& h, const Vec& context,
                   const std::vector<std::vector<std::size_t>>& neighbors,
                   bool interact, const ParamStore& params) {
  const Mat w = Param(params, prefix + "w");
  const Vec b = ParamVec(params, prefix + "b");
  const Mat w1 = Param(params, prefix + "key.w1");
  const Vec b1 = ParamVec(params, prefix + "key.b1");
  const Mat w2 = Param(params, prefix + "key.w2");
  const Vec b2 = ParamVec(params, prefix + "key.b2");
  const Vec a = ParamVec(params, prefix + "att");
  const std::size_t d = h[0].size();

  Mat transformed;
  for (const Vec& row : h) {
    Vec t = VecMat(row, w);
    for (std::size_t j = 0; j < d; ++j) t[j] += b[j];
    transformed.push_back(std::move(t));
  }
  Mat out = h;
  for (std::size_t i = 0; i < h.size(); ++i) {
    Vec scores;
    Mat values;
    for (std::size_t j : neighbors[i]) {
      Vec x = interact ? Join({&context, &h[i], &h[j]}) : Join({&h[i], &h[j]});
      Vec hidden = VecMat(x, w1);
      for (std::size_t k = 0; k < d; ++k) hidden[k] = std::max(0.0, hidden[k] + b1[k]);
      Vec key = VecMat(hidden, w2);
      for (std::size_t k = 0; k < d; ++k) key[k] += b2[k];
      const double s = DotV(a, key);
      scores.push_back(s > 0 ? s : 0.2 * s);
      values.push_back(transformed[j]);
    }
    Vec agg = Combine(SoftmaxV(scores), values);
    for (std::size_t k = 0; k < d; ++k) out[i][k] = std::max(0.0, agg[k]) + h[i][k];
  }
  return out;
}

RefOutput RefDualInteraction(const Mat& news_nodes, const Mat& user_nodes,
                             const RefGraphs& graphs, std::size_t layers,
                             bool interact_news, bool interact_user,
                             const ParamStore& params) {
  auto user_ctx = [&](const Mat& hu, const Vec& cn) {
    Mat news(hu.begin(), hu.begin() + static_cast<std::ptrdiff_t>(graphs.num_news));
    return RefUserContext(news, graphs.groups, cn);
  };
  Mat hn = news_nodes, hu = user_nodes;
  Vec cn = RefNewsContext(hn, params);
  Vec cu = user_ctx(hu, cn);
  for (std::size_t l = 0; l < layers; ++l) {
    const std::string tag = std::to_string(l) + ".";
    Mat next_n = hn;
    if (!graphs.news_static) {
      next_n = RefGraphUpdate("interaction.news.l" + tag, hn, cu,
                              graphs.news_neighbors, interact_news, params);
    }
    Mat next_u = RefGraphUpdate("interaction.user.l" + tag, hu, cn,
                                graphs.user_neighbors, interact_user, params);
    hn = std::move(next_n);
    hu = std::move(next_u);
    cn = RefNewsContext(hn, params);
    cu = user_ctx(hu, cn);
  }
  return {cn, cu};
}

std::vector<std::vector<std::size_t>> NeighborsWithSelfLoops(
    const std::vector<std::vector<int>>& adjacency) {
  std::vector<std::vector<std::size_t>> out(adjacency.size());
  for (std::size_t i = 0; i < adjacency.size(); ++i) {
    for (int j : adjacency[i]) out[i].push_back(static_cast<std::size_t>(j));
    if (out[i].empty()) out[i].push_back(i);
  }
  return out;
}

RefOutput RefForWorld(const MiniWorld& world, const CandidateGraph& candidate,
                      const DualOutput& out) {
  RefGraphs g;
  g.news_static = !candidate.propagate;
  if (candidate.propagate) g.news_neighbors = NeighborsWithSelfLoops(candidate.adjacency);
  UserGraph ug = BuildUserGraph(world.history);
  g.user_neighbors = NeighborsWithSelfLoops(ug.Adjacency());
  g.groups = ug.TopicGroups();
  g.num_news = ug.num_news();
  return RefDualInteraction(ToMat(out.news_states[0]), ToMat(out.user_states[0]), g,
                            world.config.layers, world.config.interact_news,
                            world.config.interact_user, world.model->params());
}

}  // namespace digat::testing
