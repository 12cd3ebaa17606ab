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

#include "digat/params.h"

#include <cmath>

#include "digat/errors.h"

namespace digat {

Tensor& ParamStore::Add(const std::string& name, Tensor value) {
  if (index_.contains(name)) {
    throw ContractError("parameter '" + name + "' registered twice");
  }
  value.set_requires_grad(true);
  index_.emplace(name, entries_.size());
  entries_.push_back({name, std::move(value)});
  return entries_.back().value;
}

bool ParamStore::Contains(std::string_view name) const {
  return index_.contains(std::string(name));
}

Tensor& ParamStore::Get(std::string_view name) {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) {
    throw LookupError("unknown parameter '" + std::string(name) + "'");
  }
  return entries_[it->second].value;
}

const Tensor& ParamStore::Get(std::string_view name) const {
  return const_cast<ParamStore*>(this)->Get(name);
}

std::size_t ParamStore::NumScalars() const {
  std::size_t n = 0;
  for (const auto& p : entries_) n += p.value.size();
  return n;
}

void ParamStore::ZeroGrad() {
  for (auto& p : entries_) p.value.ZeroGrad();
}

void ParamStore::ScaleGrad(double factor) {
  for (auto& p : entries_) {
    if (!p.value.has_grad()) continue;
    for (double& g : p.value.mutable_grad()) g *= factor;
  }
}

Tensor GlorotUniform(std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double limit =
      std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  return UniformTensor({fan_in, fan_out}, -limit, limit, rng);
}

Tensor UniformTensor(Shape shape, double lo, double hi, Rng& rng) {
  std::vector<double> data(ShapeSize(shape));
  for (double& v : data) v = rng.Uniform(lo, hi);
  return Tensor::FromData(std::move(shape), std::move(data));
}

}  // namespace digat
