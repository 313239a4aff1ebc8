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


#ifndef PPADRC_ENGINE_SCENARIOS_H_
#define PPADRC_ENGINE_SCENARIOS_H_

#include <vector>

#include "ppadrc/engine/config.h"
#include "ppadrc/geometry/point.h"

namespace ppadrc {

// Reference setups for the rendezvous experiments. Initial states are drawn
// uniformly from [-1, 1]^d with initial seed kScenarioInitialSeed; callers
// override noise, horizon and seed as needed.
inline constexpr uint64_t kScenarioInitialSeed = 2024;

// 10 agents in the plane, agents 8 and 9 Byzantine with messages uniform in
// [-0.7, -0.3] x [0.3, 0.7]; every normal agent hears both faulty agents and
// 6 random normal agents per iteration. gamma = 0.8, lambda = 2,
// upsilon = 0.75, T = 1000.
SimConfig PlanarScenario();

// 12 agents in space, agents 10 and 11 Byzantine; each normal agent hears
// every other normal agent and one random faulty agent per iteration.
SimConfig SpatialScenario();

// 5 normal agents and 1 Byzantine agent on a complete graph, messages in
// [-0.7, -0.4] x [0.4, 0.7], gamma fixed at 0.4, lambda = 2, upsilon = 0.75.
SimConfig PrivacyScenario();

// Neighboring initial states for PrivacyScenario: agent 0 moved by
// (0.1, 0.2), so the two configurations are sqrt(0.05) apart.
std::vector<Point> PrivacyScenarioShift();

}  // namespace ppadrc

#endif  // PPADRC_ENGINE_SCENARIOS_H_
