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

#ifndef DIGAT_FORWARD_OPTIONS_H_
#define DIGAT_FORWARD_OPTIONS_H_

#include <span>
#include <string>
#include <vector>

#include "digat/random.h"

namespace digat {

// Collects every normalized attention distribution produced in a forward
// pass, one entry per softmax group.
struct AttentionLog {
  struct Entry {
    std::string site;
    std::vector<double> weights;
  };
  std::vector<Entry> entries;

  void Record(std::string site, std::span<const double> weights) {
    entries.push_back({std::move(site), {weights.begin(), weights.end()}});
  }
};

struct ForwardOptions {
  // Dropout is applied only when an RNG is supplied.
  Rng* dropout_rng = nullptr;
  AttentionLog* log = nullptr;
};

}  // namespace digat

#endif  // DIGAT_FORWARD_OPTIONS_H_
