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

#include "digat/ops.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "digat/errors.h"

namespace digat {

using internal::MakeOpResult;
using internal::TensorImpl;

namespace {

[[noreturn]] void Mismatch(const char* op, const Tensor& a, const Tensor& b) {
  throw ShapeError(std::string(op) + ": shapes " + ShapeToString(a.shape()) +
                   " and " + ShapeToString(b.shape()) + " do not conform");
}

void RequireRank(const char* op, const Tensor& a, std::size_t rank) {
  if (a.rank() != rank) {
    throw ShapeError(std::string(op) + ": expected rank " +
                     std::to_string(rank) + ", got shape " +
                     ShapeToString(a.shape()));
  }
}

// Input k's gradient buffer, or an empty span when it needs none.
std::span<double> InputGrad(TensorImpl& self, std::size_t k) {
  TensorImpl& in = *self.inputs[k];
  if (!in.requires_grad) return {};
  return in.GradBuffer();
}

template <typename F, typename DF>
Tensor Unary(const char* op, const Tensor& a, F f, DF df) {
  auto x = a.data();
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  return MakeOpResult(op, a.shape(), std::move(y), {&a}, [df](TensorImpl& self) {
    auto gx = InputGrad(self, 0);
    if (gx.empty()) return;
    const auto& x = self.inputs[0]->data;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      gx[i] += self.grad[i] * df(x[i], self.data[i]);
    }
  });
}

}  // namespace

Tensor MatMul(const Tensor& a, const Tensor& b) {
  RequireRank("matmul", a, 2);
  RequireRank("matmul", b, 2);
  const std::size_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  if (b.dim(0) != k) Mismatch("matmul", a, b);
  auto x = a.data();
  auto y = b.data();
  std::vector<double> out(m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double* row = out.data() + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double s = x[i * k + p];
      const double* brow = y.data() + p * n;
      for (std::size_t j = 0; j < n; ++j) row[j] += s * brow[j];
    }
  }
  return MakeOpResult(
      "matmul", {m, n}, std::move(out), {&a, &b},
      [m, k, n](TensorImpl& self) {
        const auto& x = self.inputs[0]->data;
        const auto& y = self.inputs[1]->data;
        const auto& g = self.grad;
        if (auto ga = InputGrad(self, 0); !ga.empty()) {
          for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t p = 0; p < k; ++p) {
              double acc = 0.0;
              const double* grow = g.data() + i * n;
              const double* brow = y.data() + p * n;
              for (std::size_t j = 0; j < n; ++j) acc += grow[j] * brow[j];
              ga[i * k + p] += acc;
            }
          }
        }
        if (auto gb = InputGrad(self, 1); !gb.empty()) {
          for (std::size_t i = 0; i < m; ++i) {
            const double* grow = g.data() + i * n;
            for (std::size_t p = 0; p < k; ++p) {
              const double s = x[i * k + p];
              double* gbrow = gb.data() + p * n;
              for (std::size_t j = 0; j < n; ++j) gbrow[j] += s * grow[j];
            }
          }
        }
      });
}

Tensor Transpose(const Tensor& a) {
  RequireRank("transpose", a, 2);
  const std::size_t m = a.dim(0), n = a.dim(1);
  auto x = a.data();
  std::vector<double> out(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j * m + i] = x[i * n + j];
  return MakeOpResult("transpose", {n, m}, std::move(out), {&a},
                      [m, n](TensorImpl& self) {
                        auto ga = InputGrad(self, 0);
                        if (ga.empty()) return;
                        for (std::size_t i = 0; i < m; ++i)
                          for (std::size_t j = 0; j < n; ++j)
                            ga[i * n + j] += self.grad[j * m + i];
                      });
}

Tensor Add(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) Mismatch("add", a, b);
  auto x = a.data();
  auto y = b.data();
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return MakeOpResult("add", a.shape(), std::move(out), {&a, &b},
                      [](TensorImpl& self) {
                        for (std::size_t k = 0; k < 2; ++k) {
                          auto g = InputGrad(self, k);
                          for (std::size_t i = 0; i < g.size(); ++i)
                            g[i] += self.grad[i];
                        }
                      });
}

Tensor Sub(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) Mismatch("sub", a, b);
  auto x = a.data();
  auto y = b.data();
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return MakeOpResult("sub", a.shape(), std::move(out), {&a, &b},
                      [](TensorImpl& self) {
                        auto ga = InputGrad(self, 0);
                        for (std::size_t i = 0; i < ga.size(); ++i)
                          ga[i] += self.grad[i];
                        auto gb = InputGrad(self, 1);
                        for (std::size_t i = 0; i < gb.size(); ++i)
                          gb[i] -= self.grad[i];
                      });
}

Tensor Mul(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) Mismatch("mul", a, b);
  auto x = a.data();
  auto y = b.data();
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
  return MakeOpResult("mul", a.shape(), std::move(out), {&a, &b},
                      [](TensorImpl& self) {
                        const auto& x = self.inputs[0]->data;
                        const auto& y = self.inputs[1]->data;
                        auto ga = InputGrad(self, 0);
                        for (std::size_t i = 0; i < ga.size(); ++i)
                          ga[i] += self.grad[i] * y[i];
                        auto gb = InputGrad(self, 1);
                        for (std::size_t i = 0; i < gb.size(); ++i)
                          gb[i] += self.grad[i] * x[i];
                      });
}

Tensor AddBias(const Tensor& a, const Tensor& bias) {
  RequireRank("add_bias", bias, 1);
  if (a.rank() < 1 || a.rank() > 2 || a.cols() != bias.size()) {
    Mismatch("add_bias", a, bias);
  }
  const std::size_t n = bias.size();
  auto x = a.data();
  auto b = bias.data();
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + b[i % n];
  return MakeOpResult("add_bias", a.shape(), std::move(out), {&a, &bias},
                      [n](TensorImpl& self) {
                        auto ga = InputGrad(self, 0);
                        for (std::size_t i = 0; i < ga.size(); ++i)
                          ga[i] += self.grad[i];
                        auto gb = InputGrad(self, 1);
                        if (gb.empty()) return;
                        for (std::size_t i = 0; i < self.grad.size(); ++i)
                          gb[i % n] += self.grad[i];
                      });
}

Tensor Scale(const Tensor& a, double factor) {
  return Unary(
      "scale", a, [factor](double v) { return v * factor; },
      [factor](double, double) { return factor; });
}

Tensor DivScalar(const Tensor& a, double divisor) {
  if (divisor == 0.0) throw DomainError("division by zero");
  return Unary(
      "div_scalar", a, [divisor](double v) { return v / divisor; },
      [divisor](double, double) { return 1.0 / divisor; });
}

Tensor AddScalar(const Tensor& a, double value) {
  return Unary(
      "add_scalar", a, [value](double v) { return v + value; },
      [](double, double) { return 1.0; });
}

Tensor OneMinus(const Tensor& a) {
  return Unary(
      "one_minus", a, [](double v) { return 1.0 - v; },
      [](double, double) { return -1.0; });
}

Tensor Relu(const Tensor& a) {
  return Unary(
      "relu", a, [](double v) { return v > 0.0 ? v : 0.0; },
      [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Tensor LeakyRelu(const Tensor& a, double slope) {
  return Unary(
      "leaky_relu", a, [slope](double v) { return v > 0.0 ? v : slope * v; },
      [slope](double x, double) { return x > 0.0 ? 1.0 : slope; });
}

Tensor Sigmoid(const Tensor& a) {
  return Unary(
      "sigmoid", a,
      [](double v) {
        if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
        const double e = std::exp(v);
        return e / (1.0 + e);
      },
      [](double, double y) { return y * (1.0 - y); });
}

Tensor Tanh(const Tensor& a) {
  return Unary(
      "tanh", a, [](double v) { return std::tanh(v); },
      [](double, double y) { return 1.0 - y * y; });
}

Tensor Exp(const Tensor& a) {
  return Unary(
      "exp", a, [](double v) { return std::exp(v); },
      [](double, double y) { return y; });
}

Tensor Log(const Tensor& a) {
  for (double v : a.data()) {
    if (!(v > 0.0)) throw DomainError("log of non-positive value");
  }
  return Unary(
      "log", a, [](double v) { return std::log(v); },
      [](double x, double) { return 1.0 / x; });
}

Tensor Dot(const Tensor& a, const Tensor& b) {
  RequireRank("dot", a, 1);
  if (a.shape() != b.shape()) Mismatch("dot", a, b);
  auto x = a.data();
  auto y = b.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return MakeOpResult("dot", {}, {acc}, {&a, &b}, [](TensorImpl& self) {
    const double g = self.grad[0];
    const auto& x = self.inputs[0]->data;
    const auto& y = self.inputs[1]->data;
    auto ga = InputGrad(self, 0);
    for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += g * y[i];
    auto gb = InputGrad(self, 1);
    for (std::size_t i = 0; i < gb.size(); ++i) gb[i] += g * x[i];
  });
}

Tensor Sum(const Tensor& a) {
  double acc = 0.0;
  for (double v : a.data()) acc += v;
  return MakeOpResult("sum", {}, {acc}, {&a}, [](TensorImpl& self) {
    auto ga = InputGrad(self, 0);
    for (double& g : ga) g += self.grad[0];
  });
}

Tensor Mean(const Tensor& a) {
  if (a.size() == 0) throw DomainError("mean of an empty tensor");
  const double n = static_cast<double>(a.size());
  double acc = 0.0;
  for (double v : a.data()) acc += v;
  return MakeOpResult("mean", {}, {acc / n}, {&a}, [n](TensorImpl& self) {
    auto ga = InputGrad(self, 0);
    for (double& g : ga) g += self.grad[0] / n;
  });
}

Tensor LogSumExp(const Tensor& a) {
  if (a.size() == 0) throw DomainError("log-sum-exp over an empty tensor");
  auto x = a.data();
  const double m = *std::max_element(x.begin(), x.end());
  if (!std::isfinite(m)) throw DomainError("log-sum-exp of non-finite input");
  double s = 0.0;
  for (double v : x) s += std::exp(v - m);
  const double out = m + std::log(s);
  return MakeOpResult("log_sum_exp", {}, {out}, {&a}, [](TensorImpl& self) {
    auto ga = InputGrad(self, 0);
    if (ga.empty()) return;
    const auto& x = self.inputs[0]->data;
    const double lse = self.data[0];
    for (std::size_t i = 0; i < ga.size(); ++i)
      ga[i] += self.grad[0] * std::exp(x[i] - lse);
  });
}

Tensor Softmax(const Tensor& a, std::span<const std::uint8_t> keep) {
  if (a.rank() == 0 || a.rank() > 2) {
    throw ShapeError("softmax: expected a vector or matrix, got " +
                     ShapeToString(a.shape()));
  }
  const std::size_t rows = a.rows(), cols = a.cols();
  if (cols == 0) throw DomainError("softmax over an empty axis");
  if (!keep.empty() && keep.size() != a.size()) {
    throw ShapeError("softmax: mask of size " + std::to_string(keep.size()) +
                     " for input " + ShapeToString(a.shape()));
  }
  auto x = a.data();
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t base = r * cols;
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cols; ++c) {
      if (keep.empty() || keep[base + c]) m = std::max(m, x[base + c]);
    }
    if (m == -std::numeric_limits<double>::infinity()) {
      throw DomainError("softmax row " + std::to_string(r) +
                        " has no unmasked finite entries");
    }
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      if (keep.empty() || keep[base + c]) {
        y[base + c] = std::exp(x[base + c] - m);
        s += y[base + c];
      }
    }
    for (std::size_t c = 0; c < cols; ++c) y[base + c] /= s;
  }
  return MakeOpResult(
      "softmax", a.shape(), std::move(y), {&a}, [rows, cols](TensorImpl& self) {
        auto ga = InputGrad(self, 0);
        if (ga.empty()) return;
        const auto& y = self.data;
        const auto& g = self.grad;
        for (std::size_t r = 0; r < rows; ++r) {
          const std::size_t base = r * cols;
          double dot = 0.0;
          for (std::size_t c = 0; c < cols; ++c)
            dot += y[base + c] * g[base + c];
          for (std::size_t c = 0; c < cols; ++c)
            ga[base + c] += y[base + c] * (g[base + c] - dot);
        }
      });
}

Tensor Concat(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw ShapeError("concat of zero tensors");
  const std::size_t rank = parts[0].rank();
  if (rank != 1 && rank != 2) {
    throw ShapeError("concat: expected vectors or matrices, got " +
                     ShapeToString(parts[0].shape()));
  }
  const std::size_t rows = parts[0].rows();
  std::vector<std::size_t> widths;
  std::size_t total = 0;
  for (const Tensor& p : parts) {
    if (p.rank() != rank || p.rows() != rows) Mismatch("concat", parts[0], p);
    widths.push_back(p.cols());
    total += p.cols();
  }
  std::vector<double> out(rows * total);
  std::size_t offset = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    auto x = parts[k].data();
    for (std::size_t r = 0; r < rows; ++r) {
      std::copy_n(x.data() + r * widths[k], widths[k],
                  out.data() + r * total + offset);
    }
    offset += widths[k];
  }
  Shape shape = rank == 1 ? Shape{total} : Shape{rows, total};
  return MakeOpResult(
      "concat", std::move(shape), std::move(out), parts,
      [rows, total, widths](TensorImpl& self) {
        std::size_t offset = 0;
        for (std::size_t k = 0; k < widths.size(); ++k) {
          auto g = InputGrad(self, k);
          if (!g.empty()) {
            for (std::size_t r = 0; r < rows; ++r)
              for (std::size_t c = 0; c < widths[k]; ++c)
                g[r * widths[k] + c] += self.grad[r * total + offset + c];
          }
          offset += widths[k];
        }
      });
}

Tensor ConcatRows(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw ShapeError("concat_rows of zero tensors");
  const std::size_t cols = parts[0].cols();
  std::size_t rows = 0;
  std::vector<std::size_t> sizes;
  for (const Tensor& p : parts) {
    if (p.rank() < 1 || p.rank() > 2 || p.cols() != cols) {
      Mismatch("concat_rows", parts[0], p);
    }
    rows += p.rows();
    sizes.push_back(p.size());
  }
  std::vector<double> out;
  out.reserve(rows * cols);
  for (const Tensor& p : parts) {
    auto x = p.data();
    out.insert(out.end(), x.begin(), x.end());
  }
  return MakeOpResult("concat_rows", {rows, cols}, std::move(out), parts,
                      [sizes](TensorImpl& self) {
                        std::size_t offset = 0;
                        for (std::size_t k = 0; k < sizes.size(); ++k) {
                          auto g = InputGrad(self, k);
                          for (std::size_t i = 0; i < g.size(); ++i)
                            g[i] += self.grad[offset + i];
                          offset += sizes[k];
                        }
                      });
}

Tensor Gather(const Tensor& a, std::span<const std::size_t> rows) {
  RequireRank("gather", a, 2);
  const std::size_t n = a.dim(0), cols = a.dim(1);
  auto x = a.data();
  std::vector<double> out(rows.size() * cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= n) {
      throw ShapeError("gather: row " + std::to_string(rows[i]) +
                       " out of range for " + ShapeToString(a.shape()));
    }
    std::copy_n(x.data() + rows[i] * cols, cols, out.data() + i * cols);
  }
  std::vector<std::size_t> idx(rows.begin(), rows.end());
  return MakeOpResult("gather", {rows.size(), cols}, std::move(out), {&a},
                      [idx = std::move(idx), cols](TensorImpl& self) {
                        auto ga = InputGrad(self, 0);
                        if (ga.empty()) return;
                        for (std::size_t i = 0; i < idx.size(); ++i) {
                          double* dst = ga.data() + idx[i] * cols;
                          const double* src = self.grad.data() + i * cols;
                          for (std::size_t c = 0; c < cols; ++c) dst[c] += src[c];
                        }
                      });
}

Tensor Row(const Tensor& a, std::size_t r) {
  const std::size_t idx[] = {r};
  return Reshape(Gather(a, idx), {a.cols()});
}

Tensor SliceCols(const Tensor& a, std::size_t begin, std::size_t count) {
  RequireRank("slice_cols", a, 2);
  const std::size_t rows = a.dim(0), cols = a.dim(1);
  if (begin + count > cols) {
    throw ShapeError("slice_cols: [" + std::to_string(begin) + ", " +
                     std::to_string(begin + count) + ") out of range for " +
                     ShapeToString(a.shape()));
  }
  auto x = a.data();
  std::vector<double> out(rows * count);
  for (std::size_t r = 0; r < rows; ++r)
    std::copy_n(x.data() + r * cols + begin, count, out.data() + r * count);
  return MakeOpResult("slice_cols", {rows, count}, std::move(out), {&a},
                      [rows, cols, begin, count](TensorImpl& self) {
                        auto ga = InputGrad(self, 0);
                        if (ga.empty()) return;
                        for (std::size_t r = 0; r < rows; ++r)
                          for (std::size_t c = 0; c < count; ++c)
                            ga[r * cols + begin + c] += self.grad[r * count + c];
                      });
}

Tensor Reshape(const Tensor& a, Shape shape) {
  if (ShapeSize(shape) != a.size()) {
    throw ShapeError("reshape: cannot view " + ShapeToString(a.shape()) +
                     " as " + ShapeToString(shape));
  }
  return MakeOpResult("reshape", std::move(shape), a.ToVector(), {&a},
                      [](TensorImpl& self) {
                        auto ga = InputGrad(self, 0);
                        for (std::size_t i = 0; i < ga.size(); ++i)
                          ga[i] += self.grad[i];
                      });
}

Tensor SegmentSoftmax(const Tensor& scores,
                      std::span<const std::size_t> segments,
                      std::size_t num_segments) {
  RequireRank("segment_softmax", scores, 1);
  if (segments.size() != scores.size()) {
    throw ShapeError("segment_softmax: " + std::to_string(segments.size()) +
                     " segment ids for " + std::to_string(scores.size()) +
                     " scores");
  }
  auto x = scores.data();
  std::vector<double> maxes(num_segments,
                            -std::numeric_limits<double>::infinity());
  for (std::size_t e = 0; e < x.size(); ++e) {
    if (segments[e] >= num_segments)
      throw ShapeError("segment_softmax: segment id out of range");
    maxes[segments[e]] = std::max(maxes[segments[e]], x[e]);
  }
  std::vector<double> sums(num_segments, 0.0);
  std::vector<double> y(x.size());
  for (std::size_t e = 0; e < x.size(); ++e) {
    y[e] = std::exp(x[e] - maxes[segments[e]]);
    sums[segments[e]] += y[e];
  }
  for (std::size_t e = 0; e < x.size(); ++e) y[e] /= sums[segments[e]];
  std::vector<std::size_t> seg(segments.begin(), segments.end());
  return MakeOpResult(
      "segment_softmax", scores.shape(), std::move(y), {&scores},
      [seg = std::move(seg), num_segments](TensorImpl& self) {
        auto ga = InputGrad(self, 0);
        if (ga.empty()) return;
        std::vector<double> dots(num_segments, 0.0);
        for (std::size_t e = 0; e < seg.size(); ++e)
          dots[seg[e]] += self.data[e] * self.grad[e];
        for (std::size_t e = 0; e < seg.size(); ++e)
          ga[e] += self.data[e] * (self.grad[e] - dots[seg[e]]);
      });
}

Tensor SegmentWeightedSum(const Tensor& weights, const Tensor& values,
                          std::span<const std::size_t> targets,
                          std::span<const std::size_t> sources,
                          std::size_t num_targets) {
  RequireRank("segment_weighted_sum", weights, 1);
  RequireRank("segment_weighted_sum", values, 2);
  const std::size_t edges = weights.size();
  if (targets.size() != edges || sources.size() != edges) {
    throw ShapeError("segment_weighted_sum: index lists do not match " +
                     std::to_string(edges) + " weights");
  }
  const std::size_t n = values.dim(0), d = values.dim(1);
  auto w = weights.data();
  auto v = values.data();
  std::vector<double> out(num_targets * d, 0.0);
  for (std::size_t e = 0; e < edges; ++e) {
    if (targets[e] >= num_targets || sources[e] >= n) {
      throw ShapeError("segment_weighted_sum: index out of range");
    }
    double* dst = out.data() + targets[e] * d;
    const double* src = v.data() + sources[e] * d;
    for (std::size_t c = 0; c < d; ++c) dst[c] += w[e] * src[c];
  }
  std::vector<std::size_t> tgt(targets.begin(), targets.end());
  std::vector<std::size_t> src(sources.begin(), sources.end());
  return MakeOpResult(
      "segment_weighted_sum", {num_targets, d}, std::move(out),
      {&weights, &values},
      [tgt = std::move(tgt), src = std::move(src), d](TensorImpl& self) {
        const auto& w = self.inputs[0]->data;
        const auto& v = self.inputs[1]->data;
        auto gw = InputGrad(self, 0);
        auto gv = InputGrad(self, 1);
        for (std::size_t e = 0; e < tgt.size(); ++e) {
          const double* g = self.grad.data() + tgt[e] * d;
          if (!gw.empty()) {
            double acc = 0.0;
            for (std::size_t c = 0; c < d; ++c) acc += g[c] * v[src[e] * d + c];
            gw[e] += acc;
          }
          if (!gv.empty()) {
            double* dst = gv.data() + src[e] * d;
            for (std::size_t c = 0; c < d; ++c) dst[c] += w[e] * g[c];
          }
        }
      });
}

Tensor Dropout(const Tensor& a, double rate, Rng& rng) {
  if (rate < 0.0 || rate >= 1.0) {
    throw DomainError("dropout rate must lie in [0, 1)");
  }
  if (rate == 0.0) return a;
  const double scale = 1.0 / (1.0 - rate);
  auto x = a.data();
  std::vector<double> mask(x.size());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mask[i] = rng.Uniform() >= rate ? scale : 0.0;
    out[i] = x[i] * mask[i];
  }
  return MakeOpResult("dropout", a.shape(), std::move(out), {&a},
                      [mask = std::move(mask)](TensorImpl& self) {
                        auto ga = InputGrad(self, 0);
                        for (std::size_t i = 0; i < ga.size(); ++i)
                          ga[i] += self.grad[i] * mask[i];
                      });
}

}  // namespace digat
