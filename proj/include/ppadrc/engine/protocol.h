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

#ifndef PPADRC_ENGINE_PROTOCOL_H_
#define PPADRC_ENGINE_PROTOCOL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "ppadrc/base/random.h"
#include "ppadrc/engine/config.h"
#include "ppadrc/geometry/point.h"
#include "ppadrc/network/graph.h"

namespace ppadrc {

// Noise vector for iteration t: zero off the mask, independent
// N(0, (lambda upsilon^t)^2) draws on it.
Point SampleNoise(int t, const NoiseSchedule& schedule, int dim,
                  Stream& stream);

// Messages from faulty agent `sender` to each of `recipients`, aligned with
// that list.
std::vector<Point> ByzantineMessages(const ByzantineStrategy& strategy,
                                     int sender, int t,
                                     std::span<const int> recipients, int dim,
                                     Stream& stream);

struct StepOutput {
  StateMatrix next;
  // y_i(t) for every normal agent.
  StateMatrix transmitted;
  std::vector<double> gamma;
  int degenerate_fallbacks = 0;
  int resilience_violations = 0;
};

// One iteration of the protocol for the normal agents (rows of `states` in
// increasing agent order): transmit x + noise, take a depth-verified
// centerpoint of the received multiset, move a fraction gamma towards it.
// `noise_shift`, when non-empty, is subtracted from row i's noise.
absl::StatusOr<StepOutput> Step(const StateMatrix& states, const DiGraph& g,
                                int t, const SimConfig& cfg,
                                std::span<const Point> noise_shift = {});

struct RunResult {
  StateMatrix final_states;
  // States at iterations 0..T when recorded.
  std::vector<StateMatrix> trajectory;
  // Transmitted states at iterations 0..T-1 when recorded.
  std::vector<StateMatrix> transmitted;
  // gamma_trace[t][i] for normal row i.
  std::vector<std::vector<double>> gamma_trace;
  uint64_t schedule_digest = 0;
  uint64_t seed = 0;
  int degenerate_fallbacks = 0;
  int resilience_violations = 0;
};

absl::StatusOr<RunResult> Run(const SimConfig& cfg);

// Same as Run on an explicit schedule.
absl::StatusOr<RunResult> RunOnSchedule(const SimConfig& cfg,
                                        const GraphSchedule& schedule);

struct CoupledRuns {
  RunResult original;
  RunResult shifted;
  // shift_trace[h][i] = eta'_i(h) - eta_i(h).
  std::vector<std::vector<Point>> shift_trace;
};

// Runs cfg and a twin started at x_i(0) + shifts[i] whose noise is
// eta_i(h) - prod_{t<h} (1 - gamma_i(t)) shifts[i]. The twin computes its own
// recursion; its transmitted states match the original's up to rounding.
// Shifts must vanish off the noise mask and lambda must be positive.
absl::StatusOr<CoupledRuns> RunCoupled(const SimConfig& cfg,
                                       std::span<const Point> shifts);

}  // namespace ppadrc

#endif  // PPADRC_ENGINE_PROTOCOL_H_
