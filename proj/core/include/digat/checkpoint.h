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

#ifndef DIGAT_CHECKPOINT_H_
#define DIGAT_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "digat/optim.h"
#include "digat/params.h"

namespace digat {

struct CheckpointHeader {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  // Optimizer steps and epochs completed when the checkpoint was written.
  std::uint64_t step = 0;
  std::uint64_t epoch = 0;
};

struct Checkpoint {
  CheckpointHeader header;
  std::vector<NamedParam> params;
  std::optional<AdamState> optimizer;
};

// Binary little-endian container:
//   "DIGATCKP" | u32 version | u64 config_hash | u64 seed | u64 step |
//   u64 epoch | u64 count | count x (u32 name_len, name, u32 rank,
//   rank x u64 dim, f64 payload...) | u8 has_optimizer | [optimizer block]
// Payloads are raw IEEE-754 doubles, so a load reproduces values bit-exactly.
void SaveCheckpoint(const std::filesystem::path& path,
                    const CheckpointHeader& header, const ParamStore& params,
                    const AdamState* optimizer = nullptr);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

// Copies checkpoint values into an existing store. Every store parameter must
// be present with the same shape; extra checkpoint entries are an error too.
void RestoreParams(const Checkpoint& checkpoint, ParamStore& params);

}  // namespace digat

#endif  // DIGAT_CHECKPOINT_H_
