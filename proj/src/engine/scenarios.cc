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


#include "ppadrc/engine/scenarios.h"

namespace ppadrc {
namespace {

SimConfig Common(int dim) {
  SimConfig cfg;
  cfg.dim = dim;
  cfg.noise = {2.0, 0.75, {}};
  cfg.gamma = GammaPolicy::Fixed(0.8);
  cfg.horizon = 1000;
  cfg.byzantine.kind = ByzantineKind::kBoxRandom;
  cfg.initial.box.assign(dim, {-1.0, 1.0});
  cfg.initial.seed = kScenarioInitialSeed;
  return cfg;
}

}  // namespace

SimConfig PlanarScenario() {
  SimConfig cfg = Common(2);
  cfg.n = 10;
  cfg.faulty = {8, 9};
  cfg.topology = {TopologyKind::kRandomKIn, 8};
  cfg.byzantine.box = {{-0.7, -0.3}, {0.3, 0.7}};
  return cfg;
}

SimConfig SpatialScenario() {
  SimConfig cfg = Common(3);
  cfg.n = 12;
  cfg.faulty = {10, 11};
  cfg.topology = {TopologyKind::kOneFaulty, 0};
  cfg.byzantine.box = {{-0.7, -0.3}, {0.3, 0.7}, {0.3, 0.7}};
  return cfg;
}

SimConfig PrivacyScenario() {
  SimConfig cfg = Common(2);
  cfg.n = 6;
  cfg.faulty = {5};
  cfg.gamma = GammaPolicy::Fixed(0.4);
  cfg.topology = {TopologyKind::kComplete, 0};
  cfg.byzantine.box = {{-0.7, -0.4}, {0.4, 0.7}};
  return cfg;
}

std::vector<Point> PrivacyScenarioShift() {
  std::vector<Point> shift(5, Point(2));
  shift[0] = Point{0.1, 0.2};
  return shift;
}

}  // namespace ppadrc
