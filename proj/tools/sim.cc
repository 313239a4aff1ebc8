// Copyright 2026 The PP-ADRC Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end: sim run|ensemble|analyze|privacy|plot.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ppadrc/cli/commands.h"

int main(int argc, char** argv) {
  namespace cli = ppadrc::cli;
  CLI::App app{"Noisy resilient vector consensus simulator"};
  app.require_subcommand(1);

  cli::CommandOptions opts;
  uint64_t seed = 0;
  int runs = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "JSON experiment config")
        ->required();
    sub->add_option("--out", opts.out_dir, "Output directory");
  };

  CLI::App* run = app.add_subcommand("run", "Simulate one run");
  add_common(run);
  run->add_option("--seed", seed, "Override the master seed");

  CLI::App* ens = app.add_subcommand("ensemble", "Simulate independent runs");
  add_common(ens);
  ens->add_option("--seed", seed, "Override the master seed");
  ens->add_option("--runs", runs, "Override the number of runs");
  ens->add_option("--jobs", opts.jobs, "Worker threads (0 = all cores)");

  CLI::App* analyze =
      app.add_subcommand("analyze", "Statistical checks on an ensemble");
  add_common(analyze);
  analyze->add_option("--input", opts.input_path, "Ensemble record");
  analyze->add_option("--seed", seed, "Seed the ensemble was run with");
  analyze->add_option("--runs", runs, "Runs the ensemble was run with");

  CLI::App* privacy = app.add_subcommand("privacy", "Privacy audit");
  add_common(privacy);
  privacy->add_option("--seed", seed, "Override the master seed");

  CLI::App* plot = app.add_subcommand("plot", "Render SVG figures");
  add_common(plot);
  plot->add_option("--input", opts.input_path, "Run or ensemble record");
  plot->add_option("--seed", seed, "Seed the input was produced with");
  plot->add_option("--runs", runs, "Runs the input was produced with");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitConfigError;
  }
  for (CLI::App* sub : app.get_subcommands()) {
    if (sub->count("--seed") > 0) opts.seed = seed;
    if (sub->get_option_no_throw("--runs") != nullptr &&
        sub->count("--runs") > 0) {
      opts.runs = runs;
    }
  }

  if (run->parsed()) return cli::CmdRun(opts, std::cout, std::cerr);
  if (ens->parsed()) return cli::CmdEnsemble(opts, std::cout, std::cerr);
  if (analyze->parsed()) return cli::CmdAnalyze(opts, std::cout, std::cerr);
  if (privacy->parsed()) return cli::CmdPrivacy(opts, std::cout, std::cerr);
  return cli::CmdPlot(opts, std::cout, std::cerr);
}
