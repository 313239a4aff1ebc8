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


#ifndef PPADRC_ANALYSIS_ENSEMBLE_H_
#define PPADRC_ANALYSIS_ENSEMBLE_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "absl/status/statusor.h"
#include "ppadrc/engine/config.h"
#include "ppadrc/engine/protocol.h"
#include "ppadrc/geometry/point.h"

namespace ppadrc {

struct EnsembleOptions {
  int runs = 1000;
  // 0 selects std::thread::hardware_concurrency().
  int threads = 0;
  // Run r uses SimConfig::seed = RunSeed(master_seed, r).
  uint64_t master_seed = 0;
  // Keeps every RunResult; otherwise only the summaries below survive.
  bool keep_results = false;
};

// Monte Carlo sample of the final value. Entry r always belongs to run r,
// whatever the thread count.
struct Ensemble {
  // Centroid of the normal agents' final states, one per run.
  std::vector<Point> finals;
  // Largest squared distance between two normal agents at the horizon.
  std::vector<double> disagreement_sq;
  std::vector<uint64_t> seeds;
  std::vector<RunResult> results;
  uint64_t config_digest = 0;
  int degenerate_fallbacks = 0;
  int resilience_violations = 0;

  int runs() const { return static_cast<int>(finals.size()); }
};

uint64_t RunSeed(uint64_t master_seed, int run);

// Runs the configuration `options.runs` times in parallel. Fails with the
// error of the lowest-numbered failing run.
absl::StatusOr<Ensemble> RunEnsemble(const SimConfig& cfg,
                                     const EnsembleOptions& options);

// Calls body(r) for r in [0, count) on up to `threads` workers.
void ParallelFor(int count, int threads, const std::function<void(int)>& body);

}  // namespace ppadrc

#endif  // PPADRC_ANALYSIS_ENSEMBLE_H_
