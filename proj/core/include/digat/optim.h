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

#ifndef DIGAT_OPTIM_H_
#define DIGAT_OPTIM_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "digat/params.h"

namespace digat {

struct AdamOptions {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamMoments {
  std::vector<double> first;
  std::vector<double> second;
};

struct AdamState {
  AdamOptions options;
  std::uint64_t step = 0;
  // Keyed by parameter name; created lazily on the first update.
  std::map<std::string, AdamMoments> moments;
};

// One bias-corrected Adam update of every parameter from its accumulated
// gradient (missing gradients count as zero). Increments state.step.
void AdamStep(ParamStore& params, AdamState& state);

// Rescales all gradients so their joint L2 norm is at most max_norm and
// returns the norm measured before scaling. Non-finite gradients raise
// NumericError naming the parameter.
double ClipGlobalNorm(ParamStore& params, double max_norm);

// Joint L2 norm of all gradients.
double GlobalGradNorm(const ParamStore& params);

}  // namespace digat

#endif  // DIGAT_OPTIM_H_
