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

#ifndef PPADRC_ENGINE_CONFIG_H_
#define PPADRC_ENGINE_CONFIG_H_

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "ppadrc/base/random.h"
#include "ppadrc/geometry/point.h"
#include "ppadrc/network/graph.h"

namespace ppadrc {

// Per-iteration Gaussian noise with standard deviation lambda * upsilon^t on
// the dimensions in `mask` (all dimensions when empty). lambda == 0 is the
// noiseless limit.
struct NoiseSchedule {
  double lambda = 0.0;
  double upsilon = 0.5;
  std::vector<int> mask;

  double StdDev(int t) const;
  bool IsNoisy(int k) const;
  absl::Status Validate(int dim) const;
};

enum class GammaRule { kFixed, kUniform };

// Step sizes gamma_i(t) in [gamma_l, gamma_m]. kFixed uses gamma_l for every
// agent and iteration and requires gamma_l == gamma_m.
struct GammaPolicy {
  double gamma_l = 0.8;
  double gamma_m = 0.8;
  GammaRule rule = GammaRule::kFixed;

  static GammaPolicy Fixed(double gamma) {
    return {gamma, gamma, GammaRule::kFixed};
  }
  static GammaPolicy Uniform(double lo, double hi) {
    return {lo, hi, GammaRule::kUniform};
  }
  absl::Status Validate(double upsilon) const;
};

enum class ByzantineKind { kBoxRandom, kFixedPoint, kCustom };

// Messages that faulty agents send. With per_recipient set every recipient
// gets an independent draw; otherwise one draw goes to all recipients.
struct ByzantineStrategy {
  ByzantineKind kind = ByzantineKind::kBoxRandom;
  std::vector<std::pair<double, double>> box;
  Point fixed_point;
  std::string label;
  // Used by kCustom: message from `sender` to `recipient` at iteration t.
  std::function<Point(int sender, int recipient, int t, Stream& stream)>
      custom;
  bool per_recipient = true;

  absl::Status Validate(int dim) const;
};

// Initial states of the normal agents, one row per normal agent in
// increasing agent order. Either explicit rows or uniform draws from `box`
// under `seed`; the draw does not depend on the run seed, so an ensemble
// shares its initial states.
struct InitialStates {
  std::vector<Point> states;
  std::vector<std::pair<double, double>> box;
  uint64_t seed = 0;
};

struct RecordOptions {
  bool trajectory = false;
  bool transmitted = false;
};

struct SimConfig {
  int n = 0;
  std::vector<int> faulty;
  int dim = 2;
  NoiseSchedule noise;
  GammaPolicy gamma;
  int horizon = 0;
  TopologyPolicy topology;
  ScheduleOptions schedule_options;
  ByzantineStrategy byzantine;
  InitialStates initial;
  uint64_t seed = 0;
  int search_budget = 2000;
  RecordOptions record;
  // Verifies after every centerpoint that it lies in the hull of the
  // recipient's normal in-neighbors' transmitted states.
  bool check_resilience = false;

  std::vector<int> NormalAgents() const;
  int NormalCount() const {
    return n - static_cast<int>(faulty.size());
  }
};

// Checks every field; messages name the offending field path, e.g.
// "noise.upsilon: must lie in (0, 1)".
absl::Status ValidateConfig(const SimConfig& cfg);

// Initial normal states: the explicit rows, or the seeded box draw.
absl::StatusOr<std::vector<Point>> MaterializeInitialStates(
    const SimConfig& cfg);

// Canonical one-line rendering of every field that influences a run, with
// reals printed to 17 significant digits. Recording switches are excluded.
std::string CanonicalConfigText(const SimConfig& cfg);

// FNV-1a of CanonicalConfigText.
uint64_t ConfigDigest(const SimConfig& cfg);

}  // namespace ppadrc

#endif  // PPADRC_ENGINE_CONFIG_H_
