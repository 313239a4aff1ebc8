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


#include "ppadrc/analysis/ensemble.h"

#include <algorithm>
#include <atomic>
#include <thread>

#include "ppadrc/base/random.h"

namespace ppadrc {

uint64_t RunSeed(uint64_t master_seed, int run) {
  return DeriveSeed(master_seed, "run", static_cast<uint64_t>(run), 0);
}

void ParallelFor(int count, int threads,
                 const std::function<void(int)>& body) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
  }
  threads = std::clamp(threads, 1, std::max(count, 1));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < count; r = next++) body(r);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
}

absl::StatusOr<Ensemble> RunEnsemble(const SimConfig& cfg,
                                     const EnsembleOptions& options) {
  if (options.runs < 1) {
    return absl::InvalidArgumentError("ensemble needs at least one run");
  }
  if (absl::Status s = ValidateConfig(cfg); !s.ok()) return s;
  const int runs = options.runs;
  std::vector<absl::StatusOr<RunResult>> out(
      runs, absl::UnknownError("run not executed"));
  ParallelFor(runs, options.threads, [&](int r) {
    SimConfig local = cfg;
    local.seed = RunSeed(options.master_seed, r);
    out[r] = Run(local);
  });

  Ensemble e;
  e.config_digest = ConfigDigest(cfg);
  e.finals.reserve(runs);
  for (int r = 0; r < runs; ++r) {
    if (!out[r].ok()) return out[r].status();
    const RunResult& res = *out[r];
    const StateMatrix& x = res.final_states;
    double worst = 0.0;
    for (size_t a = 0; a < x.size(); ++a) {
      for (size_t b = a + 1; b < x.size(); ++b) {
        worst = std::max(worst, SquaredNorm(x[a] - x[b]));
      }
    }
    e.finals.push_back(Centroid(x));
    e.disagreement_sq.push_back(worst);
    e.seeds.push_back(res.seed);
    e.degenerate_fallbacks += res.degenerate_fallbacks;
    e.resilience_violations += res.resilience_violations;
    if (options.keep_results) e.results.push_back(std::move(*out[r]));
  }
  return e;
}

}  // namespace ppadrc
