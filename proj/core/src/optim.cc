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

#include "digat/optim.h"

#include <cmath>

#include "digat/errors.h"

namespace digat {

void AdamStep(ParamStore& params, AdamState& state) {
  const AdamOptions& o = state.options;
  const std::uint64_t t = state.step + 1;
  const double correction1 = 1.0 - std::pow(o.beta1, static_cast<double>(t));
  const double correction2 = 1.0 - std::pow(o.beta2, static_cast<double>(t));
  for (auto& [name, param] : params) {
    auto& m = state.moments[name];
    const std::size_t n = param.size();
    if (m.first.empty() && m.second.empty()) {
      m.first.assign(n, 0.0);
      m.second.assign(n, 0.0);
    }
    if (m.first.size() != n || m.second.size() != n) {
      throw ContractError("Adam moments for '" + name + "' hold " +
                          std::to_string(m.first.size()) +
                          " values but the parameter has " +
                          std::to_string(n));
    }
    auto value = param.mutable_data();
    auto grad = param.grad();
    for (std::size_t i = 0; i < n; ++i) {
      const double g = grad.empty() ? 0.0 : grad[i];
      m.first[i] = o.beta1 * m.first[i] + (1.0 - o.beta1) * g;
      m.second[i] = o.beta2 * m.second[i] + (1.0 - o.beta2) * g * g;
      const double m_hat = m.first[i] / correction1;
      const double v_hat = m.second[i] / correction2;
      value[i] -= o.learning_rate * m_hat / (std::sqrt(v_hat) + o.epsilon);
    }
  }
  state.step = t;
}

double GlobalGradNorm(const ParamStore& params) {
  double sq = 0.0;
  for (const auto& [name, param] : params) {
    for (double g : param.grad()) {
      if (!std::isfinite(g)) {
        throw NumericError("non-finite gradient in parameter '" + name + "'");
      }
      sq += g * g;
    }
  }
  return std::sqrt(sq);
}

double ClipGlobalNorm(ParamStore& params, double max_norm) {
  if (!(max_norm > 0.0)) {
    throw ContractError("clip max_norm must be positive");
  }
  const double norm = GlobalGradNorm(params);
  if (norm > max_norm) params.ScaleGrad(max_norm / norm);
  return norm;
}

}  // namespace digat
