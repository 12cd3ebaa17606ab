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

#ifndef DIGAT_PARAMS_H_
#define DIGAT_PARAMS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "digat/random.h"
#include "digat/tensor.h"

namespace digat {

struct NamedParam {
  std::string name;
  Tensor value;
};

// Every learnable weight of a model, addressable by a stable name and
// iterated in registration order.
class ParamStore {
 public:
  // Registers `value` as a trainable leaf. Duplicate names are a
  // ContractError.
  Tensor& Add(const std::string& name, Tensor value);

  bool Contains(std::string_view name) const;
  // LookupError when absent.
  Tensor& Get(std::string_view name);
  const Tensor& Get(std::string_view name) const;

  std::size_t size() const { return entries_.size(); }
  std::size_t NumScalars() const;

  std::vector<NamedParam>::iterator begin() { return entries_.begin(); }
  std::vector<NamedParam>::iterator end() { return entries_.end(); }
  std::vector<NamedParam>::const_iterator begin() const {
    return entries_.begin();
  }
  std::vector<NamedParam>::const_iterator end() const {
    return entries_.end();
  }

  void ZeroGrad();
  // Multiplies every accumulated gradient by `factor`.
  void ScaleGrad(double factor);

 private:
  std::vector<NamedParam> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Initializers.
Tensor GlorotUniform(std::size_t fan_in, std::size_t fan_out, Rng& rng);
Tensor UniformTensor(Shape shape, double lo, double hi, Rng& rng);

}  // namespace digat

#endif  // DIGAT_PARAMS_H_
