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

#ifndef DIGAT_TOOLS_COMMANDS_H_
#define DIGAT_TOOLS_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace digat::tools {

struct CommonOptions {
  std::string config;
  std::vector<std::string> overrides;
};

struct TrainOptions {
  CommonOptions common;
  std::string resume;
  std::string dump_vocab;
};

struct EvaluateOptions {
  CommonOptions common;
  std::string checkpoint;
  std::string dump_scores;
  // "eval" or "train".
  std::string split = "eval";
};

struct InspectOptions {
  CommonOptions common;
  std::string news_id;
  std::string user_id;
  std::string dot;
};

struct SweepOptions {
  CommonOptions common;
  // "key=v1,v2,..." entries; runs the Cartesian product.
  std::vector<std::string> vary;
  std::string out;
};

struct ToyCommandOptions {
  std::string out_dir;
  unsigned long long seed = 7;
};

// Each returns the process exit code; library errors propagate as
// digat::Error and are mapped by the caller.
int BuildSag(const CommonOptions& options, std::ostream& out);
int Train(const TrainOptions& options, std::ostream& out);
int Evaluate(const EvaluateOptions& options, std::ostream& out);
int InspectGraph(const InspectOptions& options, std::ostream& out);
int Sweep(const SweepOptions& options, std::ostream& out);
int GenerateToy(const ToyCommandOptions& options, std::ostream& out);

}  // namespace digat::tools

#endif  // DIGAT_TOOLS_COMMANDS_H_
