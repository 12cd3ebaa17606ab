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

#ifndef DIGAT_TENSOR_H_
#define DIGAT_TENSOR_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace digat {

using Shape = std::vector<std::size_t>;

std::string ShapeToString(const Shape& shape);
std::size_t ShapeSize(const Shape& shape);

namespace internal {

struct TapeState;

struct TensorImpl {
  Shape shape;
  std::vector<double> data;
  // Empty until something accumulates into it.
  std::vector<double> grad;
  bool requires_grad = false;

  // Populated only for tensors produced by an op while a tape was recording.
  std::weak_ptr<TapeState> tape;
  std::size_t tape_index = 0;
  const char* op = "leaf";
  std::vector<std::shared_ptr<TensorImpl>> inputs;
  // Reads this node's grad and accumulates into the inputs' grads.
  std::function<void(TensorImpl&)> backward;

  std::span<double> GradBuffer();
};

struct TapeState {
  std::vector<std::shared_ptr<TensorImpl>> nodes;
  bool consumed = false;
};

}  // namespace internal

// Dense row-major float64 tensor. Copies share storage (handle semantics);
// use Clone() for a deep copy.
class Tensor {
 public:
  Tensor() = default;

  static Tensor Zeros(Shape shape, bool requires_grad = false);
  static Tensor Full(Shape shape, double value, bool requires_grad = false);
  static Tensor FromData(Shape shape, std::vector<double> data,
                         bool requires_grad = false);
  // 1-D tensor.
  static Tensor FromVector(std::vector<double> values,
                           bool requires_grad = false);
  static Tensor Scalar(double value, bool requires_grad = false);

  bool defined() const { return impl_ != nullptr; }

  const Shape& shape() const;
  std::size_t rank() const { return shape().size(); }
  std::size_t size() const;
  std::size_t dim(std::size_t axis) const;
  // Matrix views: rows() is dim 0 and cols() the last dim. A 1-D tensor is a
  // single row.
  std::size_t rows() const;
  std::size_t cols() const;

  std::span<const double> data() const;
  // Untracked in-place access, for optimizers and initialization.
  std::span<double> mutable_data();

  bool requires_grad() const;
  void set_requires_grad(bool value);

  bool has_grad() const;
  std::span<const double> grad() const;
  // Allocates a zero gradient buffer on first use.
  std::span<double> mutable_grad();
  void ZeroGrad();

  double item() const;
  double at(std::size_t i) const;
  double at(std::size_t row, std::size_t col) const;
  std::vector<double> ToVector() const;

  Tensor Clone(bool requires_grad = false) const;

  // Reverse-mode sweep from a scalar produced on a live, unconsumed tape.
  void Backward() const;

  const char* op_name() const;
  internal::TensorImpl* impl() const { return impl_.get(); }
  const std::shared_ptr<internal::TensorImpl>& shared_impl() const {
    return impl_;
  }
  static Tensor Wrap(std::shared_ptr<internal::TensorImpl> impl);

 private:
  explicit Tensor(std::shared_ptr<internal::TensorImpl> impl)
      : impl_(std::move(impl)) {}

  std::shared_ptr<internal::TensorImpl> impl_;
};

// While a GradientTape is alive on the current thread, ops whose inputs
// require gradients are recorded onto it. Tapes nest; the innermost records.
class GradientTape {
 public:
  GradientTape();
  ~GradientTape();
  GradientTape(const GradientTape&) = delete;
  GradientTape& operator=(const GradientTape&) = delete;

  std::size_t size() const { return state_->nodes.size(); }
  bool consumed() const { return state_->consumed; }

  static bool Recording();

 private:
  std::shared_ptr<internal::TapeState> state_;
  std::shared_ptr<internal::TapeState> previous_;
};

namespace internal {

using BackwardFn = std::function<void(TensorImpl&)>;

// Builds an op output and records it on the active tape when any input
// requires a gradient.
Tensor MakeOpResult(const char* op, Shape shape, std::vector<double> data,
                    std::initializer_list<const Tensor*> inputs,
                    BackwardFn backward);
Tensor MakeOpResult(const char* op, Shape shape, std::vector<double> data,
                    const std::vector<Tensor>& inputs, BackwardFn backward);

}  // namespace internal
}  // namespace digat

#endif  // DIGAT_TENSOR_H_
