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

#include "digat/tensor.h"

#include <sstream>

#include "digat/errors.h"

namespace digat {
namespace {

thread_local std::shared_ptr<internal::TapeState> g_active_tape;

void CheckDefined(const std::shared_ptr<internal::TensorImpl>& impl) {
  if (!impl) throw ContractError("use of an undefined tensor");
}

}  // namespace

std::string ShapeToString(const Shape& shape) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out << ", ";
    out << shape[i];
  }
  if (shape.size() == 1) out << ',';
  out << ')';
  return out.str();
}

std::size_t ShapeSize(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

namespace internal {

std::span<double> TensorImpl::GradBuffer() {
  if (grad.empty()) grad.assign(data.size(), 0.0);
  return grad;
}

}  // namespace internal

Tensor Tensor::Zeros(Shape shape, bool requires_grad) {
  return Full(std::move(shape), 0.0, requires_grad);
}

Tensor Tensor::Full(Shape shape, double value, bool requires_grad) {
  const std::size_t n = ShapeSize(shape);
  return FromData(std::move(shape), std::vector<double>(n, value),
                  requires_grad);
}

Tensor Tensor::FromData(Shape shape, std::vector<double> data,
                        bool requires_grad) {
  if (ShapeSize(shape) != data.size()) {
    throw ShapeError("shape " + ShapeToString(shape) + " needs " +
                     std::to_string(ShapeSize(shape)) + " values, got " +
                     std::to_string(data.size()));
  }
  auto impl = std::make_shared<internal::TensorImpl>();
  impl->shape = std::move(shape);
  impl->data = std::move(data);
  impl->requires_grad = requires_grad;
  return Tensor(std::move(impl));
}

Tensor Tensor::FromVector(std::vector<double> values, bool requires_grad) {
  Shape shape{values.size()};
  return FromData(std::move(shape), std::move(values), requires_grad);
}

Tensor Tensor::Scalar(double value, bool requires_grad) {
  return FromData({}, {value}, requires_grad);
}

Tensor Tensor::Wrap(std::shared_ptr<internal::TensorImpl> impl) {
  return Tensor(std::move(impl));
}

const Shape& Tensor::shape() const {
  CheckDefined(impl_);
  return impl_->shape;
}

std::size_t Tensor::size() const {
  CheckDefined(impl_);
  return impl_->data.size();
}

std::size_t Tensor::dim(std::size_t axis) const {
  const Shape& s = shape();
  if (axis >= s.size()) {
    throw ShapeError("axis " + std::to_string(axis) + " out of range for " +
                     ShapeToString(s));
  }
  return s[axis];
}

std::size_t Tensor::rows() const {
  const Shape& s = shape();
  return s.size() <= 1 ? 1 : s[0];
}

std::size_t Tensor::cols() const {
  const Shape& s = shape();
  return s.empty() ? 1 : s.back();
}

std::span<const double> Tensor::data() const {
  CheckDefined(impl_);
  return impl_->data;
}

std::span<double> Tensor::mutable_data() {
  CheckDefined(impl_);
  return impl_->data;
}

bool Tensor::requires_grad() const {
  CheckDefined(impl_);
  return impl_->requires_grad;
}

void Tensor::set_requires_grad(bool value) {
  CheckDefined(impl_);
  impl_->requires_grad = value;
}

bool Tensor::has_grad() const {
  CheckDefined(impl_);
  return !impl_->grad.empty();
}

std::span<const double> Tensor::grad() const {
  CheckDefined(impl_);
  return impl_->grad;
}

std::span<double> Tensor::mutable_grad() {
  CheckDefined(impl_);
  return impl_->GradBuffer();
}

void Tensor::ZeroGrad() {
  CheckDefined(impl_);
  impl_->grad.clear();
}

double Tensor::item() const {
  if (size() != 1) {
    throw ShapeError("item() on tensor of shape " + ShapeToString(shape()));
  }
  return impl_->data[0];
}

double Tensor::at(std::size_t i) const {
  if (i >= size()) throw ShapeError("index " + std::to_string(i) + " out of range");
  return impl_->data[i];
}

double Tensor::at(std::size_t row, std::size_t col) const {
  if (row >= rows() || col >= cols()) {
    throw ShapeError("index (" + std::to_string(row) + ", " +
                     std::to_string(col) + ") out of range for " +
                     ShapeToString(shape()));
  }
  return impl_->data[row * cols() + col];
}

std::vector<double> Tensor::ToVector() const {
  auto d = data();
  return {d.begin(), d.end()};
}

Tensor Tensor::Clone(bool requires_grad) const {
  return FromData(shape(), ToVector(), requires_grad);
}

const char* Tensor::op_name() const {
  CheckDefined(impl_);
  return impl_->op;
}

void Tensor::Backward() const {
  CheckDefined(impl_);
  if (impl_->data.size() != 1) {
    throw ContractError("backward() needs a scalar loss, got shape " +
                        ShapeToString(impl_->shape));
  }
  auto tape = impl_->tape.lock();
  if (!tape) {
    if (impl_->backward) {
      throw StaleTapeError("the tape that recorded this loss no longer exists");
    }
    throw ContractError("loss was not produced by an op on a gradient tape");
  }
  if (tape->consumed) {
    throw StaleTapeError(
        "backward() already ran on this tape; re-run the forward pass");
  }
  tape->consumed = true;
  impl_->GradBuffer()[0] += 1.0;
  for (std::size_t i = impl_->tape_index + 1; i-- > 0;) {
    internal::TensorImpl& node = *tape->nodes[i];
    if (node.grad.empty()) continue;
    node.backward(node);
  }
}

GradientTape::GradientTape()
    : state_(std::make_shared<internal::TapeState>()),
      previous_(g_active_tape) {
  g_active_tape = state_;
}

GradientTape::~GradientTape() { g_active_tape = previous_; }

bool GradientTape::Recording() { return g_active_tape != nullptr; }

namespace internal {
namespace {

Tensor Finish(const char* op, Shape shape, std::vector<double> data,
              std::vector<std::shared_ptr<TensorImpl>> inputs,
              BackwardFn backward, bool any_grad) {
  Tensor out = Tensor::FromData(std::move(shape), std::move(data));
  if (!any_grad || !g_active_tape) return out;
  TensorImpl* impl = out.impl();
  impl->requires_grad = true;
  impl->op = op;
  impl->inputs = std::move(inputs);
  impl->backward = std::move(backward);
  impl->tape = g_active_tape;
  impl->tape_index = g_active_tape->nodes.size();
  g_active_tape->nodes.push_back(out.shared_impl());
  return out;
}

}  // namespace

Tensor MakeOpResult(const char* op, Shape shape, std::vector<double> data,
                    std::initializer_list<const Tensor*> inputs,
                    BackwardFn backward) {
  std::vector<std::shared_ptr<TensorImpl>> held;
  bool any_grad = false;
  held.reserve(inputs.size());
  for (const Tensor* t : inputs) {
    CheckDefined(t->shared_impl());
    any_grad = any_grad || t->requires_grad();
    held.push_back(t->shared_impl());
  }
  return Finish(op, std::move(shape), std::move(data), std::move(held),
                std::move(backward), any_grad);
}

Tensor MakeOpResult(const char* op, Shape shape, std::vector<double> data,
                    const std::vector<Tensor>& inputs, BackwardFn backward) {
  std::vector<std::shared_ptr<TensorImpl>> held;
  bool any_grad = false;
  held.reserve(inputs.size());
  for (const Tensor& t : inputs) {
    CheckDefined(t.shared_impl());
    any_grad = any_grad || t.requires_grad();
    held.push_back(t.shared_impl());
  }
  return Finish(op, std::move(shape), std::move(data), std::move(held),
                std::move(backward), any_grad);
}

}  // namespace internal
}  // namespace digat
