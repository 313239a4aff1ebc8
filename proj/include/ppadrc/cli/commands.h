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


#ifndef PPADRC_CLI_COMMANDS_H_
#define PPADRC_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace ppadrc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  // Engine failures, including an exhausted centerpoint search.
  kExitEngineError = 3,
  // An analysis or privacy check did not pass.
  kExitCheckFailed = 4,
};

struct CommandOptions {
  std::string config_path;
  std::string out_dir = ".";
  // Ensemble or run record consumed by analyze and plot; defaults to
  // <out_dir>/ensemble.ndrec.
  std::string input_path;
  std::optional<uint64_t> seed;
  std::optional<int> runs;
  // Worker threads for ensembles; 0 uses every core.
  int jobs = 0;
};

// Each command writes its files under options.out_dir, prints a short
// human-readable summary to `out`, and on failure prints one JSON error
// record to `err` (also saved as <out_dir>/error.json).
int CmdRun(const CommandOptions& options, std::ostream& out,
           std::ostream& err);
int CmdEnsemble(const CommandOptions& options, std::ostream& out,
                std::ostream& err);
int CmdAnalyze(const CommandOptions& options, std::ostream& out,
               std::ostream& err);
int CmdPrivacy(const CommandOptions& options, std::ostream& out,
               std::ostream& err);
int CmdPlot(const CommandOptions& options, std::ostream& out,
            std::ostream& err);

}  // namespace ppadrc::cli

#endif  // PPADRC_CLI_COMMANDS_H_
