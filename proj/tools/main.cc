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

#include <iostream>

#include <CLI11.hpp>

#include "commands.h"
#include "digat/errors.h"

namespace {

void AddCommon(CLI::App* cmd, digat::tools::CommonOptions& options) {
  cmd->add_option("-c,--config", options.config, "JSON run configuration");
  cmd->add_option("--set", options.overrides,
                  "Override a config key, as key=value (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  namespace t = digat::tools;
  CLI::App app{"DIGAT news recommender: graph building, training, evaluation"};
  app.require_subcommand(1);

  t::CommonOptions sag_opts;
  auto* sag = app.add_subcommand("build-sag", "Build and cache candidate SAGs");
  AddCommon(sag, sag_opts);

  t::TrainOptions train_opts;
  auto* train = app.add_subcommand("train", "Train and write checkpoints");
  AddCommon(train, train_opts.common);
  train->add_option("--resume", train_opts.resume, "Checkpoint to resume from");
  train->add_option("--dump-vocab", train_opts.dump_vocab,
                    "Write the vocabulary as token<TAB>id lines");

  t::EvaluateOptions eval_opts;
  auto* eval = app.add_subcommand("evaluate", "Score a split with a checkpoint");
  AddCommon(eval, eval_opts.common);
  eval->add_option("--checkpoint", eval_opts.checkpoint, "Checkpoint file")
      ->required();
  eval->add_option("--dump-scores", eval_opts.dump_scores,
                   "Write per-candidate scores as CSV");
  eval->add_option("--split", eval_opts.split, "eval or train");

  t::InspectOptions inspect_opts;
  auto* inspect = app.add_subcommand("inspect-graph",
                                     "Print a candidate SAG or a user graph");
  AddCommon(inspect, inspect_opts.common);
  inspect->add_option("--news", inspect_opts.news_id, "Candidate news id");
  inspect->add_option("--user", inspect_opts.user_id, "User id");
  inspect->add_option("--dot", inspect_opts.dot, "Also write a Graphviz file");

  t::SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Train and evaluate over a grid");
  AddCommon(sweep, sweep_opts.common);
  sweep->add_option("--vary", sweep_opts.vary, "key=v1,v2,... (repeatable)")
      ->required();
  sweep->add_option("--out", sweep_opts.out, "CSV output (default stdout)");

  t::ToyCommandOptions toy_opts;
  auto* toy = app.add_subcommand("generate-toy",
                                 "Write a synthetic MIND-format dataset");
  toy->add_option("--out", toy_opts.out_dir, "Output directory")->required();
  toy->add_option("--seed", toy_opts.seed, "Generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sag->parsed()) return t::BuildSag(sag_opts, std::cout);
    if (train->parsed()) return t::Train(train_opts, std::cout);
    if (eval->parsed()) return t::Evaluate(eval_opts, std::cout);
    if (inspect->parsed()) return t::InspectGraph(inspect_opts, std::cout);
    if (sweep->parsed()) return t::Sweep(sweep_opts, std::cout);
    if (toy->parsed()) return t::GenerateToy(toy_opts, std::cout);
  } catch (const digat::Error& err) {
    std::cerr << "digat: " << err.what() << '\n';
    return digat::ExitCodeFor(err.category());
  } catch (const std::exception& err) {
    std::cerr << "digat: " << err.what() << '\n';
    return 1;
  }
  return 1;
}
