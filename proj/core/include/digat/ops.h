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

#ifndef DIGAT_OPS_H_
#define DIGAT_OPS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "digat/random.h"
#include "digat/tensor.h"

namespace digat {

inline constexpr double kLeakyReluSlope = 0.2;

// Matrix product of (m, k) and (k, n).
Tensor MatMul(const Tensor& a, const Tensor& b);
Tensor Transpose(const Tensor& a);

// Elementwise; shapes must match exactly.
Tensor Add(const Tensor& a, const Tensor& b);
Tensor Sub(const Tensor& a, const Tensor& b);
Tensor Mul(const Tensor& a, const Tensor& b);
// (m, n) + (n) with the vector broadcast over rows. Also accepts 1-D + 1-D.
Tensor AddBias(const Tensor& a, const Tensor& bias);

Tensor Scale(const Tensor& a, double factor);
Tensor DivScalar(const Tensor& a, double divisor);
Tensor AddScalar(const Tensor& a, double value);
// 1 - a.
Tensor OneMinus(const Tensor& a);

Tensor Relu(const Tensor& a);
Tensor LeakyRelu(const Tensor& a, double slope = kLeakyReluSlope);
Tensor Sigmoid(const Tensor& a);
Tensor Tanh(const Tensor& a);
Tensor Exp(const Tensor& a);
// Natural log; non-positive inputs raise DomainError.
Tensor Log(const Tensor& a);

// Inner product of two equal-length 1-D tensors; returns a scalar.
Tensor Dot(const Tensor& a, const Tensor& b);
Tensor Sum(const Tensor& a);
Tensor Mean(const Tensor& a);
// Numerically stable log(sum(exp(a))) over all entries.
Tensor LogSumExp(const Tensor& a);

// Softmax along the last axis (each row of a matrix, or the whole vector).
// When `keep` is non-empty it must match the input size; entries with
// keep == 0 get probability 0. A row with nothing kept is a DomainError.
Tensor Softmax(const Tensor& a, std::span<const std::uint8_t> keep = {});

// Concatenation along the last axis. All inputs share rank and, for
// matrices, row count.
Tensor Concat(const std::vector<Tensor>& parts);
// Stacks matrices with equal column counts, or equal-length vectors as rows.
Tensor ConcatRows(const std::vector<Tensor>& parts);

// Selects rows of a matrix; indices may repeat.
Tensor Gather(const Tensor& a, std::span<const std::size_t> rows);
// Row `r` of a matrix as a 1-D tensor.
Tensor Row(const Tensor& a, std::size_t r);
Tensor SliceCols(const Tensor& a, std::size_t begin, std::size_t count);
Tensor Reshape(const Tensor& a, Shape shape);

// Softmax of a 1-D score vector within groups: entry e belongs to group
// segments[e] < num_segments.
Tensor SegmentSoftmax(const Tensor& scores,
                      std::span<const std::size_t> segments,
                      std::size_t num_segments);

// out[targets[e]] += weights[e] * values[sources[e]] for every entry e.
// Output is (num_targets, values.cols()).
Tensor SegmentWeightedSum(const Tensor& weights, const Tensor& values,
                          std::span<const std::size_t> targets,
                          std::span<const std::size_t> sources,
                          std::size_t num_targets);

// Inverted dropout. Identity when rate == 0.
Tensor Dropout(const Tensor& a, double rate, Rng& rng);

}  // namespace digat

#endif  // DIGAT_OPS_H_
